#pragma once

#include <mpfr.h>

#include <string>

#include "loom/rational.hpp"

namespace loom {

// Closed interval [lo, hi] with arbitrary-precision binary endpoints.
// Every operation rounds lo down and hi up, so the exact value of any
// expression built from enclosed inputs stays enclosed.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(Interval o);
    ~Interval();

    static Interval from_rational(const Rational& q, mpfr_prec_t prec = 128);
    static Interval from_endpoints(const Rational& lo, const Rational& hi, mpfr_prec_t prec = 128);
    static Interval from_long(long v, mpfr_prec_t prec = 128);
    static Interval pi(mpfr_prec_t prec = 128);

    mpfr_prec_t precision() const { return prec_; }
    Rational lo_rational() const;
    Rational hi_rational() const;
    double lo_double() const;
    double hi_double() const;
    Rational width() const;

    bool contains(const Rational& q) const;
    bool contains_zero() const;

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    // Throws not_invertible_error when o encloses zero.
    Interval operator/(const Interval& o) const;
    Interval operator-() const;
    Interval abs() const;
    // Integer powers; negative e requires the interval to exclude zero.
    Interval pow(long e) const;

    std::string str() const;

private:
    friend Interval sin2_pi_ratio(long k, long n, mpfr_prec_t);
    friend Interval cos_two_pi_ratio(long j, long m, mpfr_prec_t);
    void swap(Interval& o) noexcept;

    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;
};

// Enclosure of 2*sin(pi*k/n) for 0 <= k <= n.
Interval sin2_pi_ratio(long k, long n, mpfr_prec_t prec = 128);

// Enclosure of cos(2*pi*j/m), any integer j, m >= 1.
Interval cos_two_pi_ratio(long j, long m, mpfr_prec_t prec = 128);

// The unique integer m with both endpoints of x within tol of m.
// Throws ambiguous_snap_error when no or several candidates exist.
Integer snap_integer(const Interval& x, const Rational& tol);

// Starting precision for certified evaluations: 128 bits unless the
// LOOM_PREC_BITS environment variable overrides it (clamped to [64, 8192]).
mpfr_prec_t default_interval_precision();

} // namespace loom
