#include "loom/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "loom/error.hpp"

namespace loom {

PrecisionContext::PrecisionContext(long target, long max) : target_high(target), max_high(max) {
    if (target_high > max_high)
        throw invalid_input_error("precision target exceeds the refinement cap");
}

TruncatedLaurent::TruncatedLaurent() : window_low_(0), window_high_(1), exact_(true) {}

TruncatedLaurent::TruncatedLaurent(std::map<long, Rational> coeffs, long window_low, long window_high,
                                   bool exact)
    : coeffs_(std::move(coeffs)), window_low_(window_low), window_high_(window_high), exact_(exact) {
    if (window_low_ > window_high_) throw empty_window_error("window_low exceeds window_high");
    normalize();
}

void TruncatedLaurent::normalize() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
    if (!coeffs_.empty()) {
        if (coeffs_.begin()->first < window_low_ || coeffs_.rbegin()->first >= window_high_)
            throw invalid_input_error("coefficient exponent outside declared window");
    }
    if (exact_) {
        // tighten the window onto the support
        if (coeffs_.empty()) {
            window_low_ = 0;
            window_high_ = 1;
        } else {
            window_low_ = coeffs_.begin()->first;
            window_high_ = coeffs_.rbegin()->first + 1;
        }
    }
}

TruncatedLaurent TruncatedLaurent::exact_monomial(const Rational& c, long e) {
    std::map<long, Rational> m;
    if (c != 0) m[e] = c;
    return TruncatedLaurent(std::move(m), e, e + 1, true);
}

TruncatedLaurent TruncatedLaurent::exact_constant(const Rational& c) { return exact_monomial(c, 0); }

TruncatedLaurent TruncatedLaurent::exact_from_coeffs(const std::map<long, Rational>& coeffs) {
    if (coeffs.empty()) return TruncatedLaurent();
    long lo = coeffs.begin()->first;
    long hi = coeffs.rbegin()->first + 1;
    return TruncatedLaurent(coeffs, lo, hi, true);
}

TruncatedLaurent TruncatedLaurent::zero_known_on(long lo, long hi) {
    return TruncatedLaurent({}, lo, hi, false);
}

bool TruncatedLaurent::known_at(long e) const {
    if (exact_) return true;
    return e < window_high_; // everything below window_low is known zero
}

Rational TruncatedLaurent::coeff(long e) const {
    if (!known_at(e))
        throw window_too_small_error("coefficient at exponent " + std::to_string(e) +
                                     " lies outside the window");
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

bool TruncatedLaurent::is_known_zero() const { return exact_ && coeffs_.empty(); }

bool TruncatedLaurent::is_zero_on_window() const { return coeffs_.empty(); }

TruncatedLaurent TruncatedLaurent::operator+(const TruncatedLaurent& o) const {
    bool ex = exact_ && o.exact_;
    long lo = std::min(window_low_, o.window_low_);
    long hi = std::min(effective_high(), o.effective_high());
    if (!ex && hi <= lo) throw empty_window_error("sum has empty window");
    std::map<long, Rational> c;
    for (const auto& [e, v] : coeffs_)
        if (ex || e < hi) c[e] += v;
    for (const auto& [e, v] : o.coeffs_)
        if (ex || e < hi) c[e] += v;
    if (ex) return exact_from_coeffs(c);
    return TruncatedLaurent(std::move(c), lo, hi, false);
}

TruncatedLaurent TruncatedLaurent::operator-(const TruncatedLaurent& o) const { return *this + (-o); }

TruncatedLaurent TruncatedLaurent::operator-() const {
    std::map<long, Rational> c;
    for (const auto& [e, v] : coeffs_) c[e] = -v;
    return TruncatedLaurent(std::move(c), window_low_, window_high_, exact_);
}

TruncatedLaurent TruncatedLaurent::scaled(const Rational& s) const {
    if (s == 0 && exact_) return TruncatedLaurent();
    std::map<long, Rational> c;
    if (s != 0)
        for (const auto& [e, v] : coeffs_) c[e] = v * s;
    return TruncatedLaurent(std::move(c), window_low_, window_high_, exact_);
}

TruncatedLaurent TruncatedLaurent::shifted(long k) const {
    std::map<long, Rational> c;
    for (const auto& [e, v] : coeffs_) c[e + k] = v;
    return TruncatedLaurent(std::move(c), window_low_ + k, window_high_ + k, exact_);
}

TruncatedLaurent TruncatedLaurent::derivative() const {
    std::map<long, Rational> c;
    for (const auto& [e, v] : coeffs_)
        if (e != 0) c[e - 1] = v * Rational(e);
    return TruncatedLaurent(std::move(c), window_low_ - 1, window_high_ - 1, exact_);
}

TruncatedLaurent TruncatedLaurent::restricted(long lo, long hi) const {
    if (lo > hi) throw empty_window_error("restriction to empty window");
    if (!exact_ && hi > window_high_)
        throw window_too_small_error("cannot widen a truncated window");
    if (lo < window_low_) lo = window_low_;
    std::map<long, Rational> c;
    for (const auto& [e, v] : coeffs_)
        if (e >= lo && e < hi) c[e] = v;
    return TruncatedLaurent(std::move(c), lo, hi, false);
}

bool TruncatedLaurent::equal_on_common_window(const TruncatedLaurent& o) const {
    long hi = std::min(effective_high(), o.effective_high());
    long lo = std::min(window_low_, o.window_low_); // below both lows, both are zero
    if (hi <= lo) throw empty_window_error("no common window to compare on");
    auto scan = [&](const TruncatedLaurent& a, const TruncatedLaurent& b) {
        for (const auto& [e, v] : a.coeffs_) {
            if (e >= hi) continue;
            auto it = b.coeffs_.find(e);
            Rational w = it == b.coeffs_.end() ? Rational(0) : it->second;
            if (v != w) return false;
        }
        return true;
    };
    return scan(*this, o) && scan(o, *this);
}

bool TruncatedLaurent::equal_exact(const TruncatedLaurent& o) const {
    return exact_ && o.exact_ && coeffs_ == o.coeffs_;
}

std::string TruncatedLaurent::str() const {
    std::ostringstream os;
    if (coeffs_.empty()) os << "0";
    bool first = true;
    for (const auto& [e, v] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << rational_to_string(v);
        if (e != 0) os << "*z^" << e;
    }
    if (!exact_) os << " (+O(z^" << window_high_ << "))";
    return os.str();
}

TruncatedLaurent series_mul(const TruncatedLaurent& f, const TruncatedLaurent& g) {
    bool ex = f.exact() && g.exact();
    if (ex) {
        std::map<long, Rational> c;
        for (const auto& [ef, vf] : f.coeffs())
            for (const auto& [eg, vg] : g.coeffs()) c[ef + eg] += vf * vg;
        return TruncatedLaurent::exact_from_coeffs(c);
    }
    if (f.is_known_zero() || g.is_known_zero()) return TruncatedLaurent();
    long lo = f.window_low() + g.window_low();
    long hi = std::min(f.window_low() + g.effective_high(), g.window_low() + f.effective_high());
    if (hi <= lo) throw empty_window_error("product has empty window");
    std::map<long, Rational> c;
    for (const auto& [ef, vf] : f.coeffs())
        for (const auto& [eg, vg] : g.coeffs()) {
            long e = ef + eg;
            if (e < hi) c[e] += vf * vg;
        }
    return TruncatedLaurent(std::move(c), lo, hi, false);
}

long order(const TruncatedLaurent& f) {
    for (const auto& [e, v] : f.coeffs())
        if (v != 0) return e;
    if (f.exact()) throw invalid_input_error("order of the zero series");
    throw indeterminate_order_error();
}

TruncatedLaurent series_inverse(const TruncatedLaurent& f, const PrecisionContext& ctx) {
    if (f.is_zero_on_window()) {
        if (f.exact()) throw not_a_unit_error("inverse of the zero series");
        throw not_a_unit_error("all known coefficients vanish");
    }
    long v = order(f);
    if (f.exact() && f.coeffs().size() == 1) {
        // monomial: exact inverse
        return TruncatedLaurent::exact_monomial(1 / f.coeffs().begin()->second, -v);
    }
    // unit part u = z^-v f, with u_0 != 0
    long avail = f.exact() ? kUnboundedWindow : f.window_high() - v; // u known on [0, avail)
    long len = std::min(ctx.target_high + v, avail);
    if (len <= 0) throw precision_exhausted_error("inverse window is empty at requested precision");
    std::vector<Rational> u(static_cast<size_t>(len), Rational(0));
    for (const auto& [e, c] : f.coeffs()) {
        long k = e - v;
        if (k < len) u[static_cast<size_t>(k)] = c;
    }
    std::vector<Rational> b(static_cast<size_t>(len), Rational(0));
    b[0] = 1 / u[0];
    for (long k = 1; k < len; ++k) {
        Rational s(0);
        for (long j = 1; j <= k; ++j) s += u[static_cast<size_t>(j)] * b[static_cast<size_t>(k - j)];
        b[static_cast<size_t>(k)] = -s / u[0];
    }
    std::map<long, Rational> c;
    for (long k = 0; k < len; ++k)
        if (b[static_cast<size_t>(k)] != 0) c[k - v] = b[static_cast<size_t>(k)];
    return TruncatedLaurent(std::move(c), -v, -v + len, false);
}

LaurentMatrix::LaurentMatrix(long rank, std::vector<TruncatedLaurent> entries)
    : rank_(rank), entries_(std::move(entries)) {
    if (rank_ < 1) throw invalid_input_error("matrix rank must be positive");
    if (static_cast<long>(entries_.size()) != rank_ * rank_)
        throw invalid_input_error("entry count does not match rank");
}

LaurentMatrix LaurentMatrix::identity(long rank) {
    std::vector<TruncatedLaurent> e(static_cast<size_t>(rank * rank));
    for (long i = 0; i < rank; ++i) e[i * rank + i] = TruncatedLaurent::exact_constant(Rational(1));
    return LaurentMatrix(rank, std::move(e));
}

LaurentMatrix LaurentMatrix::zero(long rank) {
    return LaurentMatrix(rank, std::vector<TruncatedLaurent>(static_cast<size_t>(rank * rank)));
}

LaurentMatrix LaurentMatrix::diagonal(const std::vector<TruncatedLaurent>& diag) {
    long r = static_cast<long>(diag.size());
    LaurentMatrix m = zero(r);
    for (long i = 0; i < r; ++i) m.at(i, i) = diag[i];
    return m;
}

LaurentMatrix LaurentMatrix::z_power(const std::vector<long>& d) {
    std::vector<TruncatedLaurent> diag;
    diag.reserve(d.size());
    for (long e : d) diag.push_back(TruncatedLaurent::exact_monomial(Rational(1), e));
    return diagonal(diag);
}

LaurentMatrix LaurentMatrix::operator+(const LaurentMatrix& o) const {
    if (rank_ != o.rank_) throw invalid_input_error("rank mismatch");
    std::vector<TruncatedLaurent> e;
    e.reserve(entries_.size());
    for (size_t i = 0; i < entries_.size(); ++i) e.push_back(entries_[i] + o.entries_[i]);
    return LaurentMatrix(rank_, std::move(e));
}

LaurentMatrix LaurentMatrix::operator-(const LaurentMatrix& o) const {
    if (rank_ != o.rank_) throw invalid_input_error("rank mismatch");
    std::vector<TruncatedLaurent> e;
    e.reserve(entries_.size());
    for (size_t i = 0; i < entries_.size(); ++i) e.push_back(entries_[i] - o.entries_[i]);
    return LaurentMatrix(rank_, std::move(e));
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
    if (rank_ != o.rank_) throw invalid_input_error("rank mismatch");
    LaurentMatrix out = zero(rank_);
    for (long i = 0; i < rank_; ++i)
        for (long j = 0; j < rank_; ++j) {
            TruncatedLaurent acc; // exact zero
            bool assigned = false;
            for (long k = 0; k < rank_; ++k) {
                TruncatedLaurent term = series_mul(at(i, k), o.at(k, j));
                acc = assigned ? acc + term : term;
                assigned = true;
            }
            out.at(i, j) = acc;
        }
    return out;
}

LaurentMatrix LaurentMatrix::scaled(const TruncatedLaurent& s) const {
    std::vector<TruncatedLaurent> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(series_mul(x, s));
    return LaurentMatrix(rank_, std::move(e));
}

LaurentMatrix LaurentMatrix::shifted(long k) const {
    std::vector<TruncatedLaurent> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(x.shifted(k));
    return LaurentMatrix(rank_, std::move(e));
}

LaurentMatrix LaurentMatrix::transpose() const {
    LaurentMatrix out = zero(rank_);
    for (long i = 0; i < rank_; ++i)
        for (long j = 0; j < rank_; ++j) out.at(j, i) = at(i, j);
    return out;
}

TruncatedLaurent LaurentMatrix::trace() const {
    TruncatedLaurent acc = at(0, 0);
    for (long i = 1; i < rank_; ++i) acc = acc + at(i, i);
    return acc;
}

bool LaurentMatrix::all_exact() const {
    for (const auto& e : entries_)
        if (!e.exact()) return false;
    return true;
}

std::pair<long, long> LaurentMatrix::common_window() const {
    long lo = -kUnboundedWindow;
    long hi = kUnboundedWindow;
    for (const auto& e : entries_) {
        if (e.exact()) continue;
        lo = std::max(lo, e.window_low());
        hi = std::min(hi, e.window_high());
    }
    if (lo == -kUnboundedWindow) {
        // all entries exact: window hugging the union of supports
        lo = 0;
        hi = 1;
        for (const auto& e : entries_) {
            if (e.coeffs().empty()) continue;
            lo = std::min(lo, e.coeffs().begin()->first);
            hi = std::max(hi, e.coeffs().rbegin()->first + 1);
        }
    }
    return {lo, hi};
}

bool LaurentMatrix::equal_on_common_window(const LaurentMatrix& o) const {
    if (rank_ != o.rank_) return false;
    for (size_t i = 0; i < entries_.size(); ++i)
        if (!entries_[i].equal_on_common_window(o.entries_[i])) return false;
    return true;
}

bool LaurentMatrix::is_identity_on_window() const {
    return equal_on_common_window(identity(rank_));
}

std::string LaurentMatrix::str() const {
    std::ostringstream os;
    for (long i = 0; i < rank_; ++i) {
        os << "[ ";
        for (long j = 0; j < rank_; ++j) os << at(i, j).str() << (j + 1 < rank_ ? " | " : "");
        os << " ]\n";
    }
    return os.str();
}

namespace {

TruncatedLaurent det_recursive(const LaurentMatrix& m, std::vector<long> rows, std::vector<long> cols) {
    size_t n = rows.size();
    if (n == 1) return m.at(rows[0], cols[0]);
    TruncatedLaurent acc;
    bool assigned = false;
    std::vector<long> sub_rows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < n; ++j) {
        const TruncatedLaurent& pivot = m.at(rows[0], cols[j]);
        std::vector<long> sub_cols;
        sub_cols.reserve(n - 1);
        for (size_t k = 0; k < n; ++k)
            if (k != j) sub_cols.push_back(cols[k]);
        TruncatedLaurent term = series_mul(pivot, det_recursive(m, sub_rows, sub_cols));
        if (j % 2 == 1) term = -term;
        acc = assigned ? acc + term : term;
        assigned = true;
    }
    return acc;
}

} // namespace

TruncatedLaurent mat_det(const LaurentMatrix& m) {
    if (m.rank() > 6) throw unsupported_rank_error("determinants supported for rank <= 6");
    std::vector<long> idx(m.rank());
    for (long i = 0; i < m.rank(); ++i) idx[i] = i;
    return det_recursive(m, idx, idx);
}

LaurentMatrix mat_adjugate(const LaurentMatrix& m) {
    if (m.rank() > 6) throw unsupported_rank_error("adjugates supported for rank <= 6");
    long r = m.rank();
    LaurentMatrix adj = LaurentMatrix::zero(r);
    if (r == 1) {
        adj.at(0, 0) = TruncatedLaurent::exact_constant(Rational(1));
        return adj;
    }
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) {
            std::vector<long> rows, cols;
            for (long k = 0; k < r; ++k) {
                if (k != i) rows.push_back(k);
                if (k != j) cols.push_back(k);
            }
            TruncatedLaurent minor = det_recursive(m, rows, cols);
            if ((i + j) % 2 == 1) minor = -minor;
            adj.at(j, i) = minor; // adjugate transposes cofactors
        }
    return adj;
}

LaurentMatrix mat_inverse(const LaurentMatrix& m, const PrecisionContext& ctx) {
    if (m.rank() > 6) throw unsupported_rank_error("inverses supported for rank <= 6");
    TruncatedLaurent det = mat_det(m);
    if (det.is_zero_on_window())
        throw not_invertible_error(det.exact() ? "determinant is zero" : "determinant vanishes on window");
    TruncatedLaurent det_inv = series_inverse(det, ctx);
    return mat_adjugate(m).scaled(det_inv);
}

long matrix_pole_order(const LaurentMatrix& m) {
    long p = 0;
    for (long i = 0; i < m.rank(); ++i)
        for (long j = 0; j < m.rank(); ++j) {
            const auto& e = m.at(i, j);
            if (e.is_zero_on_window()) {
                if (!e.exact() && e.window_low() < 0)
                    throw indeterminate_order_error("entry unknown below zero");
                continue;
            }
            p = std::max(p, -order(e));
        }
    return p;
}

long matrix_degree(const LaurentMatrix& m) {
    long q = 0;
    for (long i = 0; i < m.rank(); ++i)
        for (long j = 0; j < m.rank(); ++j) {
            const auto& e = m.at(i, j);
            if (!e.coeffs().empty()) q = std::max(q, e.coeffs().rbegin()->first);
        }
    return q;
}

long pole_bound(const LaurentMatrix& m, const PrecisionContext& ctx) {
    long p = matrix_pole_order(m);
    LaurentMatrix inv = mat_inverse(m, ctx);
    return std::max(p, matrix_pole_order(inv));
}

} // namespace loom
