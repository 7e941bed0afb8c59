#include "loom/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "loom/error.hpp"

namespace loom {

long euler_phi(long n) {
    if (n < 1) throw invalid_input_error("euler_phi expects n >= 1");
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// Exact division of integer polynomials, ascending coefficients.
std::vector<Integer> poly_divide_exact(const std::vector<Integer>& num, const std::vector<Integer>& den) {
    std::vector<Integer> rem = num;
    std::vector<Integer> quot(num.size() - den.size() + 1, Integer(0));
    for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
        Integer c = rem[i + den.size() - 1] / den.back();
        quot[i] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
    }
    for (const auto& c : rem)
        if (c != 0) throw invalid_input_error("cyclotomic division not exact");
    return quot;
}

} // namespace

std::vector<Integer> cyclotomic_polynomial(long n) {
    // x^n - 1 divided by the cyclotomic polynomials of the proper divisors
    std::vector<Integer> poly(n + 1, Integer(0));
    poly[0] = -1;
    poly[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        poly = poly_divide_exact(poly, cyclotomic_polynomial(d));
    }
    return poly;
}

namespace {

struct ConductorTable {
    long phi = 0;
    // reduction[j] = coordinates of x^(phi+j) in the power basis
    std::vector<std::vector<Rational>> reduction;
};

const ConductorTable& table_for(long n) {
    static std::mutex mu;
    static std::map<long, ConductorTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    ConductorTable t;
    t.phi = euler_phi(n);
    auto cp = cyclotomic_polynomial(n);
    // x^phi = -(cp[0] + cp[1] x + ... + cp[phi-1] x^(phi-1))
    std::vector<Rational> top(t.phi);
    for (long i = 0; i < t.phi; ++i) top[i] = -Rational(cp[i]);
    long depth = std::max<long>(2 * t.phi, n); // covers products and raw zeta powers
    t.reduction.reserve(depth);
    t.reduction.push_back(top);
    for (long j = 1; j < depth; ++j) {
        const auto& prev = t.reduction.back();
        std::vector<Rational> next(t.phi, Rational(0));
        // multiply by x: shift, then fold the overflowing top coefficient
        for (long i = 0; i + 1 < t.phi; ++i) next[i + 1] = prev[i];
        if (prev[t.phi - 1] != 0)
            for (long i = 0; i < t.phi; ++i) next[i] += prev[t.phi - 1] * top[i];
        t.reduction.push_back(std::move(next));
    }
    return cache.emplace(n, std::move(t)).first->second;
}

std::vector<Rational> reduce_poly(long n, const std::vector<Rational>& raw) {
    const auto& t = table_for(n);
    std::vector<Rational> out(t.phi, Rational(0));
    for (size_t j = 0; j < raw.size(); ++j) {
        if (raw[j] == 0) continue;
        if (static_cast<long>(j) < t.phi) {
            out[j] += raw[j];
        } else {
            const auto& row = t.reduction.at(j - t.phi);
            for (long i = 0; i < t.phi; ++i) out[i] += raw[j] * row[i];
        }
    }
    return out;
}

} // namespace

Cyclotomic::Cyclotomic(long conductor, std::vector<Rational> coords)
    : conductor_(conductor), coords_(std::move(coords)) {
    if (conductor_ < 1) throw invalid_input_error("conductor must be positive");
    if (static_cast<long>(coords_.size()) != euler_phi(conductor_))
        throw invalid_input_error("coordinate vector length must equal phi(conductor)");
}

Cyclotomic Cyclotomic::from_rational(long conductor, const Rational& q) {
    std::vector<Rational> c(euler_phi(conductor), Rational(0));
    c[0] = q;
    return Cyclotomic(conductor, std::move(c));
}

Cyclotomic Cyclotomic::zeta_power(long conductor, long k) {
    long n = conductor;
    long kk = ((k % n) + n) % n;
    std::vector<Rational> raw(kk + 1, Rational(0));
    raw[kk] = 1;
    return Cyclotomic(conductor, reduce_poly(n, raw));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    if (conductor_ != o.conductor_) throw invalid_input_error("conductor mismatch");
    std::vector<Rational> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return Cyclotomic(conductor_, std::move(c));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    if (conductor_ != o.conductor_) throw invalid_input_error("conductor mismatch");
    std::vector<Rational> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return Cyclotomic(conductor_, std::move(c));
}

Cyclotomic Cyclotomic::operator-() const {
    std::vector<Rational> c(coords_);
    for (auto& x : c) x = -x;
    return Cyclotomic(conductor_, std::move(c));
}

Cyclotomic Cyclotomic::scaled(const Rational& q) const {
    std::vector<Rational> c(coords_);
    for (auto& x : c) x *= q;
    return Cyclotomic(conductor_, std::move(c));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (conductor_ != o.conductor_) throw invalid_input_error("conductor mismatch");
    long phi = static_cast<long>(coords_.size());
    std::vector<Rational> raw(2 * phi - 1, Rational(0));
    for (long i = 0; i < phi; ++i) {
        if (coords_[i] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (o.coords_[j] == 0) continue;
            raw[i + j] += coords_[i] * o.coords_[j];
        }
    }
    return Cyclotomic(conductor_, reduce_poly(conductor_, raw));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    return conductor_ == o.conductor_ && coords_ == o.coords_;
}

Cyclotomic Cyclotomic::galois(long j) const {
    long n = conductor_;
    long jj = ((j % n) + n) % n;
    Integer g;
    mpz_gcd_ui(g.get_mpz_t(), Integer(jj).get_mpz_t(), static_cast<unsigned long>(n));
    if (g != 1) throw invalid_input_error("galois exponent not coprime to conductor");
    long phi = static_cast<long>(coords_.size());
    std::vector<Rational> raw(static_cast<size_t>(n), Rational(0));
    for (long i = 0; i < phi; ++i) {
        if (coords_[i] == 0) continue;
        raw[(i * jj) % n] += coords_[i];
    }
    return Cyclotomic(conductor_, reduce_poly(n, raw));
}

bool Cyclotomic::is_real() const { return *this == conjugate(); }

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw invalid_input_error("cyclotomic element is not rational");
    return coords_[0];
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw not_invertible_error("inverse of zero cyclotomic element");
    long phi = static_cast<long>(coords_.size());
    // Solve (multiplication-by-this) y = 1 by Gaussian elimination.
    std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1, Rational(0)));
    for (long j = 0; j < phi; ++j) {
        Cyclotomic col = *this * zeta_power(conductor_, j);
        for (long i = 0; i < phi; ++i) m[i][j] = col.coords_[i];
    }
    m[0][phi] = 1;
    long row = 0;
    std::vector<long> pivot_col(phi, -1);
    for (long col = 0; col < phi && row < phi; ++col) {
        long p = -1;
        for (long i = row; i < phi; ++i)
            if (m[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[p], m[row]);
        Rational inv_pivot = 1 / m[row][col];
        for (long j = col; j <= phi; ++j) m[row][j] *= inv_pivot;
        for (long i = 0; i < phi; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (long j = col; j <= phi; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_col[row] = col;
        ++row;
    }
    std::vector<Rational> y(phi, Rational(0));
    for (long i = 0; i < row; ++i)
        if (pivot_col[i] >= 0) y[pivot_col[i]] = m[i][phi];
    Cyclotomic result(conductor_, std::move(y));
    if (!((*this * result).is_rational()) || (*this * result).rational_value() != 1)
        throw not_invertible_error("cyclotomic inverse solve failed");
    return result;
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic acc = from_rational(conductor_, Rational(1));
    Cyclotomic base = *this;
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Interval Cyclotomic::to_interval(mpfr_prec_t prec) const {
    if (!is_real()) throw invalid_input_error("interval evaluation requires a real element");
    // For real x = sum c_i zeta^i, x = (x + conj x)/2 = sum c_i cos(2 pi i / n).
    Interval acc(prec);
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        Interval c = Interval::from_rational(coords_[i], prec);
        acc = acc + c * cos_two_pi_ratio(static_cast<long>(i), conductor_, prec);
    }
    return acc;
}

Cyclotomic sin2_exact(long k, long n) {
    if (n < 1) throw invalid_input_error("sin2_exact expects n >= 1");
    long m = 4 * n;
    // 2 sin(pi k / n) = -i (zeta_2n^k - zeta_2n^-k) with -i = zeta_m^(3m/4)
    long e1 = 3 * (m / 4) + 2 * k;
    long e2 = (m / 4) - 2 * k;
    Cyclotomic v = Cyclotomic::zeta_power(m, e1) + Cyclotomic::zeta_power(m, e2);
    if (!v.is_real()) throw invalid_input_error("sin2_exact produced a non-real value");
    return v;
}

} // namespace loom
