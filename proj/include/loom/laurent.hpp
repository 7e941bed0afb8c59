#pragma once

#include <map>
#include <string>
#include <vector>

#include "loom/rational.hpp"

namespace loom {

struct PrecisionContext {
    long target_high = 24; // requested truncation exponent
    long max_high = 96;    // hard cap for adaptive refinement

    PrecisionContext() = default;
    PrecisionContext(long target, long max);
};

// Sentinel for "known to arbitrarily high exponent" (exact series).
inline constexpr long kUnboundedWindow = 1L << 40;

// A formal Laurent series known exactly on [window_low, window_high).
// The support is guaranteed to lie in [window_low, +inf); coefficients at
// exponents >= window_high are unknown unless `exact` is set, in which case
// the series equals its stored support. Requesting an unknown coefficient is
// a hard error, never a silent zero.
class TruncatedLaurent {
public:
    TruncatedLaurent(); // exact zero
    TruncatedLaurent(std::map<long, Rational> coeffs, long window_low, long window_high, bool exact);

    static TruncatedLaurent exact_monomial(const Rational& c, long e);
    static TruncatedLaurent exact_constant(const Rational& c);
    static TruncatedLaurent exact_from_coeffs(const std::map<long, Rational>& coeffs);
    static TruncatedLaurent zero_known_on(long lo, long hi);

    const std::map<long, Rational>& coeffs() const { return coeffs_; }
    long window_low() const { return window_low_; }
    long window_high() const { return window_high_; }
    bool exact() const { return exact_; }
    // window_high for bound computations: unbounded when exact
    long effective_high() const { return exact_ ? kUnboundedWindow : window_high_; }

    bool known_at(long e) const;
    // Throws window_too_small_error when the coefficient is not determined.
    Rational coeff(long e) const;

    bool is_known_zero() const;   // zero on the whole known region, exact
    bool is_zero_on_window() const;

    TruncatedLaurent operator+(const TruncatedLaurent& o) const;
    TruncatedLaurent operator-(const TruncatedLaurent& o) const;
    TruncatedLaurent operator-() const;
    TruncatedLaurent scaled(const Rational& c) const;
    TruncatedLaurent shifted(long k) const; // multiply by z^k
    TruncatedLaurent derivative() const;
    // Forgets exactness / shrinks the window to [lo, hi).
    TruncatedLaurent restricted(long lo, long hi) const;

    bool equal_on_common_window(const TruncatedLaurent& o) const;
    bool equal_exact(const TruncatedLaurent& o) const; // both exact, same series

    std::string str() const;

private:
    void normalize();

    std::map<long, Rational> coeffs_;
    long window_low_;
    long window_high_;
    bool exact_;
};

TruncatedLaurent series_mul(const TruncatedLaurent& f, const TruncatedLaurent& g);
TruncatedLaurent series_inverse(const TruncatedLaurent& f, const PrecisionContext& ctx);

// Smallest exponent carrying a nonzero coefficient.
long order(const TruncatedLaurent& f);

class LaurentMatrix {
public:
    LaurentMatrix(long rank, std::vector<TruncatedLaurent> entries);
    static LaurentMatrix identity(long rank);
    static LaurentMatrix zero(long rank);
    static LaurentMatrix diagonal(const std::vector<TruncatedLaurent>& diag);
    // diag(z^{d_1}, ..., z^{d_r})
    static LaurentMatrix z_power(const std::vector<long>& d);

    long rank() const { return rank_; }
    const TruncatedLaurent& at(long i, long j) const { return entries_[i * rank_ + j]; }
    TruncatedLaurent& at(long i, long j) { return entries_[i * rank_ + j]; }

    LaurentMatrix operator+(const LaurentMatrix& o) const;
    LaurentMatrix operator-(const LaurentMatrix& o) const;
    LaurentMatrix operator*(const LaurentMatrix& o) const;
    LaurentMatrix scaled(const TruncatedLaurent& s) const;
    LaurentMatrix shifted(long k) const; // multiply by scalar z^k
    LaurentMatrix transpose() const;
    TruncatedLaurent trace() const;

    bool all_exact() const;
    // Tightest window shared by every entry: [max lows, min effective highs).
    std::pair<long, long> common_window() const;
    bool equal_on_common_window(const LaurentMatrix& o) const;
    bool is_identity_on_window() const;

    std::string str() const;

private:
    long rank_;
    std::vector<TruncatedLaurent> entries_;
};

TruncatedLaurent mat_det(const LaurentMatrix& m);
// Transposed cofactor matrix; mat_adjugate(m) * m = mat_det(m) * I.
LaurentMatrix mat_adjugate(const LaurentMatrix& m);
LaurentMatrix mat_inverse(const LaurentMatrix& m, const PrecisionContext& ctx);
// Greatest pole order among entries of m; 0 for matrices over k[[z]].
long matrix_pole_order(const LaurentMatrix& m);
// Greatest exponent carried by any entry (exact matrices only).
long matrix_degree(const LaurentMatrix& m);
// Least N with both m and m^-1 of pole order <= N.
long pole_bound(const LaurentMatrix& m, const PrecisionContext& ctx);

} // namespace loom
