#include "loom/grassmann.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <sstream>

#include "loom/error.hpp"
#include "loom/qlinalg.hpp"

namespace loom {

DVector::DVector(std::vector<long> values) : values_(std::move(values)) {
    if (values_.empty()) throw invalid_input_error("empty d-vector");
    for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i - 1] > values_[i]) throw invalid_input_error("d-vector must be weakly increasing");
}

long DVector::sum() const { return std::accumulate(values_.begin(), values_.end(), 0L); }

std::string DVector::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < values_.size(); ++i) os << values_[i] << (i + 1 < values_.size() ? ", " : "");
    os << ")";
    return os.str();
}

bool dominance_leq(const DVector& d, const DVector& dprime) {
    if (d.size() != dprime.size()) throw length_mismatch_error("d-vectors of different length");
    if (d.sum() != dprime.sum()) throw sum_mismatch_error("d-vectors with different total sum");
    long pa = 0, pb = 0;
    for (long i = 0; i < d.size(); ++i) {
        pa += d.values()[i];
        pb += dprime.values()[i];
        if (pb < pa) return false;
    }
    return true;
}

DVector dense_orbit_dvector(long r, long N) {
    if (r < 1 || N < 0) throw invalid_input_error("dense_orbit_dvector expects r >= 1, N >= 0");
    std::vector<long> v(r, 0);
    for (long i = 1; i <= r; ++i) {
        if (2 * i < r + 1)
            v[i - 1] = -N;
        else if (2 * i > r + 1)
            v[i - 1] = N;
        else
            v[i - 1] = 0;
    }
    return DVector(v);
}

// ---------------------------------------------------------------------------
// Smith reduction over k[[z]] on truncated coefficient arrays.

namespace {

using OSeries = std::vector<Rational>; // coefficients of z^0 .. z^(len-1)

long oseries_order(const OSeries& s, long valid) {
    long n = std::min<long>(valid, static_cast<long>(s.size()));
    for (long i = 0; i < n; ++i)
        if (s[i] != 0) return i;
    return -1;
}

OSeries omul(const OSeries& a, const OSeries& b, long len) {
    OSeries out(static_cast<size_t>(len), Rational(0));
    for (long i = 0; i < static_cast<long>(a.size()) && i < len; ++i) {
        if (a[i] == 0) continue;
        long jmax = std::min<long>(static_cast<long>(b.size()), len - i);
        for (long j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

OSeries oshift_down(const OSeries& a, long k) {
    OSeries out;
    if (static_cast<long>(a.size()) > k) out.assign(a.begin() + k, a.end());
    return out;
}

OSeries oinv_unit(const OSeries& u, long len) {
    OSeries b(static_cast<size_t>(len), Rational(0));
    b[0] = 1 / u[0];
    for (long k = 1; k < len; ++k) {
        Rational s(0);
        for (long j = 1; j <= k && j < static_cast<long>(u.size()); ++j) s += u[j] * b[k - j];
        b[k] = -s / u[0];
    }
    return b;
}

// Invariant factor orders of an r x r matrix over k[[z]] known mod z^valid.
// Pivot rule: entry of minimal order, ties by smallest (row, column).
std::vector<long> smith_orders(std::vector<std::vector<OSeries>>& m, long valid) {
    long n = static_cast<long>(m.size());
    std::vector<long> orders;
    for (long k = 0; k < n; ++k) {
        long best = LONG_MAX, bi = -1, bj = -1;
        for (long i = k; i < n; ++i)
            for (long j = k; j < n; ++j) {
                long o = oseries_order(m[i][j], valid);
                if (o >= 0 && o < best) {
                    best = o;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0)
            throw precision_exhausted_error("pivot cannot be certified nonzero within the window");
        if (bi != k) std::swap(m[bi], m[k]);
        if (bj != k)
            for (long i = 0; i < n; ++i) std::swap(m[i][bj], m[i][k]);
        long p = best;
        orders.push_back(p);
        OSeries unit_inv = oinv_unit(oshift_down(m[k][k], p), valid - p);
        for (long i = k + 1; i < n; ++i) {
            if (oseries_order(m[i][k], valid) < 0) continue;
            OSeries q = omul(oshift_down(m[i][k], p), unit_inv, valid - p);
            for (long j = k; j < n; ++j) {
                OSeries prod = omul(q, m[k][j], valid);
                OSeries& tgt = m[i][j];
                tgt.resize(static_cast<size_t>(valid), Rational(0));
                for (long e = 0; e < valid && e < static_cast<long>(prod.size()); ++e) tgt[e] -= prod[e];
            }
        }
        for (long j = k + 1; j < n; ++j) {
            if (oseries_order(m[k][j], valid) < 0) continue;
            OSeries q = omul(oshift_down(m[k][j], p), unit_inv, valid - p);
            for (long i = k; i < n; ++i) {
                OSeries prod = omul(q, m[i][k], valid);
                OSeries& tgt = m[i][j];
                tgt.resize(static_cast<size_t>(valid), Rational(0));
                for (long e = 0; e < valid && e < static_cast<long>(prod.size()); ++e) tgt[e] -= prod[e];
            }
        }
        valid -= p; // elimination quotients are only known to this depth
        if (valid <= 0 && k + 1 < n)
            throw precision_exhausted_error("window exhausted during Smith reduction");
    }
    return orders;
}

std::vector<std::vector<OSeries>> to_oseries(const LaurentMatrix& m, long shift, long valid) {
    long r = m.rank();
    std::vector<std::vector<OSeries>> out(r, std::vector<OSeries>(r));
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) {
            OSeries s(static_cast<size_t>(valid), Rational(0));
            const auto& entry = m.at(i, j);
            for (const auto& [e, c] : entry.coeffs()) {
                long k = e + shift;
                if (k < 0) throw invalid_input_error("pole remains after clearing denominators");
                if (k < valid) s[static_cast<size_t>(k)] = c;
            }
            out[i][j] = std::move(s);
        }
    return out;
}

} // namespace

Lattice::Lattice(LaurentMatrix generators)
    : generators_(std::move(generators)),
      once_(std::make_shared<std::once_flag>()),
      cache_(std::make_shared<std::optional<DVector>>()) {}

const DVector& Lattice::dvector(const PrecisionContext& ctx) const {
    (void)ctx; // the Smith working precision is derived from the det order
    std::call_once(*once_, [&] {
        const LaurentMatrix& g = generators_;
        long r = g.rank();
        long n = order(mat_det(g));
        long s = matrix_pole_order(g);
        long expected = r * s + n;
        if (expected < 0) throw invalid_input_error("generators are not a lattice basis");
        long want = std::max<long>(2 * expected + 4, 8);
        long avail = want;
        if (!g.all_exact()) {
            auto [lo, hi] = g.common_window();
            (void)lo;
            avail = hi + s;
        }
        long valid = std::min(want, avail);
        if (valid <= expected)
            throw precision_exhausted_error("window too small for Smith reduction");
        auto work = to_oseries(g, s, valid);
        std::vector<long> e = smith_orders(work, valid);
        long total = std::accumulate(e.begin(), e.end(), 0L);
        if (total != expected)
            throw precision_exhausted_error("invariant factors do not account for det order");
        std::vector<long> d(e.size());
        for (size_t i = 0; i < e.size(); ++i) d[i] = e[i] - s;
        std::sort(d.begin(), d.end());
        *cache_ = DVector(d);
    });
    return **cache_;
}

DVector lattice_dvector(const Lattice& lat, const PrecisionContext& ctx) { return lat.dvector(ctx); }

bool is_special(const Lattice& lat) { return order(mat_det(lat.generators())) == 0; }

long qN_level(const Lattice& lat, const PrecisionContext& ctx) {
    const DVector& d = lat.dvector(ctx);
    return std::max(std::labs(d.values().front()), std::labs(d.values().back()));
}

// ---------------------------------------------------------------------------
// Birkhoff factorization.

namespace {

void require_unit_determinant(const LaurentMatrix& gamma) {
    TruncatedLaurent det = mat_det(gamma);
    if (!det.equal_on_common_window(TruncatedLaurent::exact_constant(Rational(1))))
        throw invalid_input_error("Birkhoff factorization requires det = 1");
}

long row_order(const LaurentMatrix& m, long i) {
    long best = LONG_MAX;
    long unknown_from = LONG_MAX; // entries zero on their window could start here
    for (long j = 0; j < m.rank(); ++j) {
        const auto& e = m.at(i, j);
        if (e.is_zero_on_window()) {
            if (!e.exact()) unknown_from = std::min(unknown_from, e.window_high());
            continue;
        }
        best = std::min(best, order(e));
    }
    if (best == LONG_MAX) throw precision_exhausted_error("matrix row vanishes on its window");
    if (best >= unknown_from)
        throw precision_exhausted_error("row order not certified by the window");
    return best;
}

// Signed permutation with determinant one sending z^o to z^(sorted o) under
// conjugation.
LaurentMatrix sorting_permutation(const std::vector<long>& o, std::vector<long>& sorted) {
    long r = static_cast<long>(o.size());
    std::vector<long> idx(r);
    for (long i = 0; i < r; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](long a, long b) { return o[a] < o[b]; });
    // parity of the permutation k -> idx[k]
    std::vector<bool> seen(r, false);
    bool odd = false;
    for (long i = 0; i < r; ++i) {
        if (seen[i]) continue;
        long len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = idx[j];
            ++len;
        }
        if (len % 2 == 0) odd = !odd;
    }
    LaurentMatrix p = LaurentMatrix::zero(r);
    for (long k = 0; k < r; ++k) {
        Rational sign = (odd && k == 0) ? Rational(-1) : Rational(1);
        p.at(k, idx[k]) = TruncatedLaurent::exact_constant(sign);
    }
    sorted.resize(r);
    for (long k = 0; k < r; ++k) sorted[k] = o[idx[k]];
    return p;
}

void check_minus_plus_shape(const LaurentMatrix& minus, const LaurentMatrix& plus) {
    for (long i = 0; i < minus.rank(); ++i)
        for (long j = 0; j < minus.rank(); ++j) {
            const auto& e = minus.at(i, j);
            if (!e.coeffs().empty() && e.coeffs().rbegin()->first > 0)
                throw precision_exhausted_error("negative factor escaped k[z^-1]");
            const auto& f = plus.at(i, j);
            if (!f.coeffs().empty() && f.coeffs().begin()->first < 0)
                throw precision_exhausted_error("positive factor escaped k[[z]]");
        }
}

} // namespace

BirkhoffFactorization birkhoff_full(const LaurentMatrix& gamma, const PrecisionContext& ctx) {
    require_unit_determinant(gamma);
    long r = gamma.rank();
    long p = matrix_pole_order(gamma);

    LaurentMatrix rows = gamma;
    LaurentMatrix b = LaurentMatrix::identity(r); // b * gamma = rows, b in SL_r(k[z^-1])
    long guard = r * p + 8;
    std::vector<long> o(r);
    for (long iter = 0;; ++iter) {
        if (iter > guard) throw precision_exhausted_error("row reduction failed to terminate");
        for (long i = 0; i < r; ++i) o[i] = row_order(rows, i);
        QMatrix lc(r, std::vector<Rational>(r, Rational(0)));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) lc[i][j] = rows.at(i, j).coeff(o[i]);
        if (q_invertible(lc)) break;
        // left null combination of the leading coefficient rows
        QMatrix lct(r, std::vector<Rational>(r, Rational(0)));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) lct[j][i] = lc[i][j];
        auto null_basis = q_nullspace(lct);
        const std::vector<Rational>& c = null_basis.front();
        long piv = -1;
        for (long i = 0; i < r; ++i) {
            if (c[i] == 0) continue;
            if (piv < 0 || o[i] < o[piv]) piv = i;
        }
        Rational scale = 1 / c[piv];
        std::vector<TruncatedLaurent> new_row(r), new_b_row(r);
        for (long j = 0; j < r; ++j) {
            TruncatedLaurent acc_r = rows.at(piv, j);
            TruncatedLaurent acc_b = b.at(piv, j);
            for (long i = 0; i < r; ++i) {
                if (i == piv || c[i] == 0) continue;
                Rational f = c[i] * scale;
                acc_r = acc_r + rows.at(i, j).scaled(f).shifted(o[piv] - o[i]);
                acc_b = acc_b + b.at(i, j).scaled(f).shifted(o[piv] - o[i]);
            }
            new_row[j] = acc_r;
            new_b_row[j] = acc_b;
        }
        for (long j = 0; j < r; ++j) {
            rows.at(piv, j) = new_row[j];
            b.at(piv, j) = new_b_row[j];
        }
    }

    // rows = z^o * (unit over O); sort o ascending with a det-1 permutation
    LaurentMatrix m = rows;
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) m.at(i, j) = m.at(i, j).shifted(-o[i]);
    std::vector<long> sorted;
    LaurentMatrix q = sorting_permutation(o, sorted);
    LaurentMatrix q_inv = q.transpose(); // signed permutations are orthogonal

    LaurentMatrix gamma_plus = q * m;
    TruncatedLaurent det_b = mat_det(b);
    if (!det_b.equal_exact(TruncatedLaurent::exact_constant(Rational(1))))
        throw precision_exhausted_error("row reduction left SL_r(k[z^-1])");
    LaurentMatrix gamma_minus = mat_inverse(b, ctx) * q_inv;

    BirkhoffFactorization out{gamma_minus, DVector(sorted), gamma_plus};
    check_minus_plus_shape(out.gamma_minus, out.gamma_plus);
    LaurentMatrix recon = out.gamma_minus * LaurentMatrix::z_power(sorted) * out.gamma_plus;
    if (!recon.equal_on_common_window(gamma))
        throw precision_exhausted_error("Birkhoff product check failed on the window");
    return out;
}

BirkhoffFactorization birkhoff_big_cell(const LaurentMatrix& gamma, const PrecisionContext& ctx) {
    require_unit_determinant(gamma);
    long r = gamma.rank();
    long p = matrix_pole_order(gamma);
    std::vector<long> zeros(r, 0);
    if (p == 0)
        return BirkhoffFactorization{LaurentMatrix::identity(r), DVector(zeros), gamma};

    // gamma_minus has pole order <= p, so B = gamma_minus^-1 = adj(gamma_minus)
    // has degree <= (r-1)p in z^-1. Solve the linear system
    //   (B * gamma) has no negative coefficients,  B = I + sum B_n z^-n.
    long P = (r - 1) * p;
    auto [wlo, whi] = gamma.common_window();
    (void)wlo;
    if (!gamma.all_exact() && whi < P)
        throw precision_exhausted_error("window too small for the big-cell system");
    auto coeff_mat = [&](long e) {
        QMatrix c(r, std::vector<Rational>(r, Rational(0)));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) c[i][j] = gamma.at(i, j).coeff(e);
        return c;
    };

    // unknown x = rows of (B_1 ... B_P); equations indexed by (m, column)
    long unknowns = P * r;
    long equations = (P + p) * r;
    QMatrix sys(equations, std::vector<Rational>(unknowns, Rational(0)));
    QMatrix rhs(equations, std::vector<Rational>(r, Rational(0)));
    for (long m = 1; m <= P + p; ++m) {
        QMatrix gm = coeff_mat(-m); // gamma_{-m}
        for (long n = 1; n <= P; ++n) {
            QMatrix gn = coeff_mat(n - m);
            // row block for equation m: sum_n B_n gamma_{n-m} = -gamma_{-m}
            for (long k = 0; k < r; ++k)
                for (long j = 0; j < r; ++j)
                    sys[(m - 1) * r + j][(n - 1) * r + k] = gn[k][j];
        }
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) rhs[(m - 1) * r + j][i] = -gm[i][j];
    }
    auto sol = q_solve(sys, rhs);
    if (!sol) throw not_in_big_cell_error();

    LaurentMatrix b_mat = LaurentMatrix::identity(r);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) {
            std::map<long, Rational> c;
            if (i == j) c[0] = 1;
            for (long n = 1; n <= P; ++n) {
                const Rational& v = (*sol)[(n - 1) * r + j][i];
                if (v != 0) c[-n] += v;
            }
            b_mat.at(i, j) = TruncatedLaurent::exact_from_coeffs(c);
        }
    TruncatedLaurent det_b = mat_det(b_mat);
    if (!det_b.equal_exact(TruncatedLaurent::exact_constant(Rational(1))))
        throw not_in_big_cell_error("solved system produced non-unimodular factor");
    LaurentMatrix gamma_plus = b_mat * gamma;
    LaurentMatrix gamma_minus = mat_inverse(b_mat, ctx);
    BirkhoffFactorization out{gamma_minus, DVector(zeros), gamma_plus};
    check_minus_plus_shape(out.gamma_minus, out.gamma_plus);
    LaurentMatrix recon = out.gamma_minus * out.gamma_plus;
    if (!recon.equal_on_common_window(gamma))
        throw precision_exhausted_error("big-cell product check failed on the window");
    return out;
}

DVector infinity_invariant_factors(const LaurentMatrix& a_of_t, long N) {
    long r = a_of_t.rank();
    if (N < 0) throw invalid_input_error("N must be nonnegative");
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) {
            const auto& e = a_of_t.at(i, j);
            if (!e.exact()) throw invalid_input_error("polynomial matrix must be exact");
            for (const auto& [ex, c] : e.coeffs()) {
                (void)c;
                if (ex < 0) throw invalid_input_error("polynomial matrix entries must be polynomials");
                if (ex > N) throw degree_too_high_error();
            }
        }
    TruncatedLaurent det = mat_det(a_of_t);
    if (!det.equal_exact(TruncatedLaurent::exact_constant(Rational(1))))
        throw invalid_input_error("invariant factors at infinity require det A(t) = 1");

    // z^N A(1/z): coefficient of t^e lands at z^(N-e)
    LaurentMatrix m = LaurentMatrix::zero(r);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) {
            std::map<long, Rational> c;
            for (const auto& [ex, v] : a_of_t.at(i, j).coeffs()) c[N - ex] = v;
            m.at(i, j) = TruncatedLaurent::exact_from_coeffs(c);
        }
    long expected = r * N;
    long valid = std::max<long>(2 * expected + 4, 8);
    auto work = to_oseries(m, 0, valid);
    std::vector<long> e = smith_orders(work, valid);
    long total = std::accumulate(e.begin(), e.end(), 0L);
    if (total != expected)
        throw precision_exhausted_error("invariant factors at infinity do not sum to rN");
    std::sort(e.begin(), e.end());
    return DVector(e);
}

// ---------------------------------------------------------------------------
// Degeneration identity of the orbit-closure proof.

namespace {

// Laurent polynomials in two variables t, z with rational coefficients.
using Biv = std::map<std::pair<long, long>, Rational>;

Biv biv_term(long te, long ze, const Rational& c) {
    Biv b;
    if (c != 0) b[{te, ze}] = c;
    return b;
}

Biv biv_mul(const Biv& a, const Biv& b) {
    Biv out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            auto key = std::make_pair(ea.first + eb.first, ea.second + eb.second);
            out[key] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

Biv biv_add(const Biv& a, const Biv& b) {
    Biv out = a;
    for (const auto& [e, c] : b) {
        out[e] += c;
        if (out[e] == 0) out.erase(e);
    }
    return out;
}

Biv biv_neg(const Biv& a) {
    Biv out;
    for (const auto& [e, c] : a) out[e] = -c;
    return out;
}

using BivMat = std::array<Biv, 4>; // 2x2 row major

BivMat bmul(const BivMat& a, const BivMat& b) {
    BivMat out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i * 2 + j] =
                biv_add(biv_mul(a[i * 2 + 0], b[0 * 2 + j]), biv_mul(a[i * 2 + 1], b[1 * 2 + j]));
    return out;
}

Biv bdet(const BivMat& a) {
    return biv_add(biv_mul(a[0], a[3]), biv_neg(biv_mul(a[1], a[2])));
}

bool z_exponents_nonnegative(const BivMat& a) {
    for (const auto& entry : a)
        for (const auto& [e, c] : entry) {
            (void)c;
            if (e.second < 0) return false;
        }
    return true;
}

bool is_monomial(const Biv& a, long te, long ze, const Rational& c) {
    return a.size() == 1 && a.begin()->first == std::make_pair(te, ze) && a.begin()->second == c;
}

} // namespace

DegenerationReport degeneration_identity_check(long d1, long d2) {
    if (d1 >= d2) throw invalid_input_error("degeneration requires d1 < d2");
    const Rational one(1);
    BivMat left = {biv_term(-1, 1, one), biv_term(-1, 0, one), biv_term(1, 0, -one), Biv{}};
    BivMat mid = {biv_term(0, d1, one), Biv{}, Biv{}, biv_term(0, d2, one)};
    BivMat right = {biv_term(1, 0, one), biv_term(-1, d2 - d1 - 1, -one), Biv{}, biv_term(-1, 0, one)};

    DegenerationReport rep;
    bool outer_ok = z_exponents_nonnegative(left) && z_exponents_nonnegative(right) &&
                    is_monomial(bdet(left), 0, 0, one) && is_monomial(bdet(right), 0, 0, one);

    BivMat prod = bmul(bmul(left, mid), right);
    bool diag_ok = is_monomial(prod[0], 0, d1 + 1, one) && is_monomial(prod[3], 0, d2 - 1, one);
    bool upper_ok = prod[1].empty();
    bool det_ok = is_monomial(bdet(prod), 0, d1 + d2, one);

    rep.ok = outer_ok && diag_ok && upper_ok && det_ok && prod[2].size() == 1;
    if (prod[2].size() == 1) {
        rep.entry21_t_exp = prod[2].begin()->first.first;
        rep.entry21_z_exp = prod[2].begin()->first.second;
        rep.entry21_coeff = prod[2].begin()->second;
        std::ostringstream os;
        os << rational_to_string(rep.entry21_coeff) << "*t^" << rep.entry21_t_exp << "*z^"
           << rep.entry21_z_exp;
        rep.entry21 = os.str();
    }
    return rep;
}

} // namespace loom
