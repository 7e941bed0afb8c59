#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "loom/laurent.hpp"

namespace loom {

// Weakly increasing integer sequence d_1 <= ... <= d_r.
class DVector {
public:
    explicit DVector(std::vector<long> values);
    const std::vector<long>& values() const { return values_; }
    long size() const { return static_cast<long>(values_.size()); }
    long sum() const;
    bool operator==(const DVector& o) const { return values_ == o.values_; }
    bool operator!=(const DVector& o) const { return values_ != o.values_; }
    std::string str() const;

private:
    std::vector<long> values_;
};

// Closure order: true iff the z^dprime-orbit lies in the closure of the
// z^d-orbit, i.e. every prefix sum of dprime dominates that of d.
bool dominance_leq(const DVector& d, const DVector& dprime);

// The d-vector whose orbit is dense in the level-N stratum.
DVector dense_orbit_dvector(long r, long N);

// Lattice W = M * O^r given by a column generator matrix invertible over K.
class Lattice {
public:
    explicit Lattice(LaurentMatrix generators);
    const LaurentMatrix& generators() const { return generators_; }
    // Invariant factors of W, memoized after the first computation.
    const DVector& dvector(const PrecisionContext& ctx) const;

private:
    LaurentMatrix generators_;
    std::shared_ptr<std::once_flag> once_;
    std::shared_ptr<std::optional<DVector>> cache_;
};

DVector lattice_dvector(const Lattice& lat, const PrecisionContext& ctx);
bool is_special(const Lattice& lat);
long qN_level(const Lattice& lat, const PrecisionContext& ctx);

struct BirkhoffFactorization {
    LaurentMatrix gamma_minus; // entries in k[z^-1]
    DVector d;                 // ascending, sum zero
    LaurentMatrix gamma_plus;  // entries in k[[z]]
};

// Factorization gamma = gamma_minus * gamma_plus with gamma_minus normalized
// to I at z = infinity. Throws not_in_big_cell_error when no such
// factorization exists.
BirkhoffFactorization birkhoff_big_cell(const LaurentMatrix& gamma, const PrecisionContext& ctx);

// Full decomposition gamma = gamma_minus * z^d * gamma_plus, d ascending.
BirkhoffFactorization birkhoff_full(const LaurentMatrix& gamma, const PrecisionContext& ctx);

// Invariant factors at infinity of a unimodular polynomial matrix A(t) of
// entry degree <= N: the elementary divisors of z^N A(1/z) over k[[z]].
// A is passed as a LaurentMatrix in t with exponents in [0, N].
DVector infinity_invariant_factors(const LaurentMatrix& a_of_t, long N);

struct DegenerationReport {
    bool ok = false;
    long entry21_t_exp = 0;
    long entry21_z_exp = 0;
    Rational entry21_coeff;
    std::string entry21; // printable monomial
};

// Expands the 2x2 triple product that degenerates z^(d1, d2) to
// z^(d1+1, d2-1) over k[t, t^-1], checking both outer factors stay in the
// SL_2(O) family and that the product has the expected diagonal, vanishing
// (1,2) entry and determinant z^(d1+d2). The computed (2,1) entry is
// reported rather than asserted.
DegenerationReport degeneration_identity_check(long d1, long d2);

} // namespace loom
