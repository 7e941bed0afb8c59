#pragma once

#include <vector>

#include "loom/interval.hpp"
#include "loom/rational.hpp"

namespace loom {

long euler_phi(long n);

// Coefficients of the n-th cyclotomic polynomial, ascending, monic.
std::vector<Integer> cyclotomic_polynomial(long n);

// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1),
// reduced modulo the n-th cyclotomic polynomial. Conductors are kept lazy:
// no automatic descent to a smaller field.
class Cyclotomic {
public:
    Cyclotomic(long conductor, std::vector<Rational> coords);

    static Cyclotomic from_rational(long conductor, const Rational& q);
    static Cyclotomic zeta_power(long conductor, long k);

    long conductor() const { return conductor_; }
    const std::vector<Rational>& coords() const { return coords_; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic scaled(const Rational& q) const;
    bool operator==(const Cyclotomic& o) const;

    // Galois action zeta -> zeta^j, gcd(j, n) = 1.
    Cyclotomic galois(long j) const;
    Cyclotomic conjugate() const { return galois(-1); }
    bool is_real() const;

    bool is_rational() const;
    Rational rational_value() const;
    bool is_zero() const;

    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;

    // Sound enclosure of the value; requires is_real().
    Interval to_interval(mpfr_prec_t prec = 128) const;

private:
    long conductor_;
    std::vector<Rational> coords_;
};

// The exact algebraic number 2*sin(pi*k/n), realized as -i(z - z^-1) for a
// primitive 2n-th root z, expressed in conductor 4n.
Cyclotomic sin2_exact(long k, long n);

} // namespace loom
