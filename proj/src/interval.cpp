#include "loom/interval.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "loom/error.hpp"

namespace loom {

namespace {

// Exact conversion: a finite mpfr value is mantissa * 2^e.
Rational mpfr_to_rational(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Rational(0);
    if (!mpfr_number_p(x)) throw invalid_input_error("non-finite interval endpoint");
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    Rational q(mant);
    if (e >= 0) {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= Rational(p2);
    } else {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= Rational(p2);
    }
    q.canonicalize();
    return q;
}

void set_from_rational(mpfr_t out, const Rational& q, mpfr_rnd_t rnd) {
    mpfr_set_q(out, q.get_mpq_t(), rnd);
}

} // namespace

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) {
    swap(o);
    return *this;
}

void Interval::swap(Interval& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    std::swap(prec_, o.prec_);
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t prec) {
    Interval r(prec);
    set_from_rational(r.lo_, q, MPFR_RNDD);
    set_from_rational(r.hi_, q, MPFR_RNDU);
    return r;
}

Interval Interval::from_endpoints(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
    if (lo > hi) throw invalid_input_error("interval endpoints out of order");
    Interval r(prec);
    set_from_rational(r.lo_, lo, MPFR_RNDD);
    set_from_rational(r.hi_, hi, MPFR_RNDU);
    return r;
}

Interval Interval::from_long(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Rational Interval::lo_rational() const { return mpfr_to_rational(lo_); }
Rational Interval::hi_rational() const { return mpfr_to_rational(hi_); }
double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
Rational Interval::width() const { return hi_rational() - lo_rational(); }

bool Interval::contains(const Rational& q) const {
    return lo_rational() <= q && q <= hi_rational();
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

Interval Interval::operator+(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::operator/(const Interval& o) const {
    if (o.contains_zero()) throw not_invertible_error("interval division by zero-enclosing interval");
    Interval r(std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::abs() const {
    Interval r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_cmp(hi_, r.hi_) > 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pow(long e) const {
    if (e == 0) return from_long(1, prec_);
    if (e < 0) {
        Interval inv = from_long(1, prec_) / *this;
        return inv.pow(-e);
    }
    Interval acc = from_long(1, prec_);
    Interval base = *this;
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

std::string Interval::str() const {
    std::ostringstream os;
    os << "[" << lo_double() << ", " << hi_double() << "]";
    return os.str();
}

namespace {

// sin over a subinterval of [0, pi], handling the maximum at pi/2.
void sin_enclosure(mpfr_t out_lo, mpfr_t out_hi, const mpfr_t a, const mpfr_t b, mpfr_prec_t prec) {
    mpfr_t half_pi_lo, half_pi_hi, sa, sb;
    mpfr_init2(half_pi_lo, prec);
    mpfr_init2(half_pi_hi, prec);
    mpfr_init2(sa, prec);
    mpfr_init2(sb, prec);
    mpfr_const_pi(half_pi_lo, MPFR_RNDD);
    mpfr_div_2ui(half_pi_lo, half_pi_lo, 1, MPFR_RNDD);
    mpfr_const_pi(half_pi_hi, MPFR_RNDU);
    mpfr_div_2ui(half_pi_hi, half_pi_hi, 1, MPFR_RNDU);

    if (mpfr_cmp(b, half_pi_lo) <= 0) {
        // increasing region
        mpfr_sin(out_lo, a, MPFR_RNDD);
        mpfr_sin(out_hi, b, MPFR_RNDU);
    } else if (mpfr_cmp(a, half_pi_hi) >= 0) {
        // decreasing region
        mpfr_sin(out_lo, b, MPFR_RNDD);
        mpfr_sin(out_hi, a, MPFR_RNDU);
    } else {
        mpfr_sin(sa, a, MPFR_RNDD);
        mpfr_sin(sb, b, MPFR_RNDD);
        if (mpfr_cmp(sa, sb) < 0)
            mpfr_set(out_lo, sa, MPFR_RNDD);
        else
            mpfr_set(out_lo, sb, MPFR_RNDD);
        mpfr_set_ui(out_hi, 1, MPFR_RNDU);
    }
    mpfr_clear(half_pi_lo);
    mpfr_clear(half_pi_hi);
    mpfr_clear(sa);
    mpfr_clear(sb);
}

} // namespace

Interval sin2_pi_ratio(long k, long n, mpfr_prec_t prec) {
    if (n < 1 || k < 0 || k > n) throw invalid_input_error("sin2_pi_ratio expects 0 <= k <= n");
    Interval theta = Interval::pi(prec) * Interval::from_long(k, prec) / Interval::from_long(n, prec);
    Interval r(prec);
    sin_enclosure(r.lo_, r.hi_, theta.lo_, theta.hi_, prec);
    Interval two = Interval::from_long(2, prec);
    return two * r;
}

Interval cos_two_pi_ratio(long j, long m, mpfr_prec_t prec) {
    if (m < 1) throw invalid_input_error("cos_two_pi_ratio expects m >= 1");
    long jj = ((j % m) + m) % m;
    if (2 * jj > m) jj = m - jj; // cos(2pi - x) = cos(x)
    // angle 2*pi*jj/m now lies in [0, pi]; cos is decreasing there
    Interval theta = Interval::pi(prec) * Interval::from_long(2 * jj, prec) / Interval::from_long(m, prec);
    Interval r(prec);
    mpfr_cos(r.lo_, theta.hi_, MPFR_RNDD);
    mpfr_cos(r.hi_, theta.lo_, MPFR_RNDU);
    return r;
}

mpfr_prec_t default_interval_precision() {
    static mpfr_prec_t prec = [] {
        const char* env = std::getenv("LOOM_PREC_BITS");
        if (env == nullptr) return static_cast<mpfr_prec_t>(128);
        long v = std::strtol(env, nullptr, 10);
        if (v < 64) v = 64;
        if (v > 8192) v = 8192;
        return static_cast<mpfr_prec_t>(v);
    }();
    return prec;
}

Integer snap_integer(const Interval& x, const Rational& tol) {
    if (tol <= 0) throw invalid_input_error("snap tolerance must be positive");
    Rational lo = x.lo_rational();
    Rational hi = x.hi_rational();
    // Certified candidates m satisfy m - tol <= lo and hi <= m + tol,
    // i.e. m lies in [hi - tol, lo + tol].
    Rational lo_bound = hi - tol;
    Rational hi_bound = lo + tol;
    if (lo_bound > hi_bound) throw ambiguous_snap_error("no integer certified within tolerance");
    mpz_class first, last;
    mpz_cdiv_q(first.get_mpz_t(), lo_bound.get_num().get_mpz_t(), lo_bound.get_den().get_mpz_t());
    mpz_fdiv_q(last.get_mpz_t(), hi_bound.get_num().get_mpz_t(), hi_bound.get_den().get_mpz_t());
    if (first > last) throw ambiguous_snap_error("no integer certified within tolerance");
    if (first < last) throw ambiguous_snap_error("several integers certified within tolerance");
    return first;
}

} // namespace loom
