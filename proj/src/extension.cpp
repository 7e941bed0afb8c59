#include "loom/extension.hpp"

#include <algorithm>

#include "loom/error.hpp"

namespace loom {

namespace {

TruncatedLaurent negative_part(const TruncatedLaurent& f) {
    std::map<long, Rational> c;
    for (const auto& [e, v] : f.coeffs())
        if (e <= -1) c[e] = v;
    if (f.exact() || f.window_high() >= 0) return TruncatedLaurent::exact_from_coeffs(c);
    return TruncatedLaurent(std::move(c), f.window_low(), f.window_high(), false);
}

LaurentMatrix matrix_derivative(const LaurentMatrix& m) {
    LaurentMatrix out = LaurentMatrix::zero(m.rank());
    for (long i = 0; i < m.rank(); ++i)
        for (long j = 0; j < m.rank(); ++j) out.at(i, j) = m.at(i, j).derivative();
    return out;
}

void require_traceless(const LaurentMatrix& m, const char* who) {
    if (!m.trace().is_zero_on_window())
        throw invalid_input_error(std::string(who) + " requires a traceless matrix");
}

// depth of the deepest certain coefficient: -min exponent, 0 if none negative
long vector_depth(const KVector& v) {
    long depth = 0;
    for (const auto& f : v)
        if (!f.coeffs().empty()) depth = std::max(depth, -f.coeffs().begin()->first);
    return depth;
}

} // namespace

KVector basis_vector(long n, long i, long r) {
    KVector v(static_cast<size_t>(r));
    v[static_cast<size_t>(i)] = TruncatedLaurent::exact_monomial(Rational(1), -n);
    return v;
}

KVector project_v(const KVector& v) {
    KVector out;
    out.reserve(v.size());
    for (const auto& f : v) out.push_back(negative_part(f));
    return out;
}

KVector apply_a(const LaurentMatrix& gamma, const KVector& v) {
    long r = gamma.rank();
    if (static_cast<long>(v.size()) != r) throw invalid_input_error("vector length mismatch");
    KVector out(static_cast<size_t>(r));
    for (long i = 0; i < r; ++i) {
        TruncatedLaurent acc;
        bool assigned = false;
        for (long k = 0; k < r; ++k) {
            TruncatedLaurent term = series_mul(gamma.at(i, k), v[static_cast<size_t>(k)]);
            acc = assigned ? acc + term : term;
            assigned = true;
        }
        out[static_cast<size_t>(i)] = acc;
    }
    return project_v(out);
}

QMatrix block_a(const LaurentMatrix& gamma, const WindowSpec& w) {
    long r = gamma.rank();
    if (w.rank != r) throw invalid_input_error("window rank mismatch");
    long p = matrix_pole_order(gamma);
    long q = std::max<long>(0, matrix_degree(gamma));
    // matrices preserving O^r compress faithfully at any depth; otherwise the
    // window has to dominate the coupling zone
    if (p > 0 && w.depth < p + q + 1)
        throw window_too_small_error("window depth below the faithfulness bound");
    QMatrix out(static_cast<size_t>(w.dim()), std::vector<Rational>(static_cast<size_t>(w.dim()), Rational(0)));
    for (long n = 1; n <= w.depth; ++n)
        for (long i = 0; i < r; ++i) {
            KVector col = apply_a(gamma, basis_vector(n, i, r));
            for (long m = 1; m <= w.depth; ++m)
                for (long j = 0; j < r; ++j)
                    out[(m - 1) * r + j][(n - 1) * r + i] = col[static_cast<size_t>(j)].coeff(-m);
        }
    return out;
}

Rational residue_pairing(const LaurentMatrix& alpha, const LaurentMatrix& beta) {
    if (alpha.rank() != beta.rank()) throw invalid_input_error("rank mismatch");
    LaurentMatrix da = matrix_derivative(alpha);
    TruncatedLaurent tr = (da * beta).trace();
    return tr.coeff(-1);
}

namespace {

Rational cocycle_at_depth(const LaurentMatrix& alpha, const LaurentMatrix& beta, long depth,
                          const LaurentMatrix& comm) {
    long r = alpha.rank();
    Rational total(0);
    for (long n = 1; n <= depth; ++n)
        for (long i = 0; i < r; ++i) {
            KVector v = basis_vector(n, i, r);
            KVector w1 = apply_a(alpha, apply_a(beta, v));
            KVector w2 = apply_a(beta, apply_a(alpha, v));
            KVector w3 = apply_a(comm, v);
            total += w1[static_cast<size_t>(i)].coeff(-n) - w2[static_cast<size_t>(i)].coeff(-n) -
                     w3[static_cast<size_t>(i)].coeff(-n);
        }
    return total;
}

} // namespace

Rational tate_cocycle(const LaurentMatrix& alpha, const LaurentMatrix& beta, const WindowSpec& w) {
    if (alpha.rank() != beta.rank() || alpha.rank() != w.rank)
        throw invalid_input_error("rank mismatch");
    require_traceless(alpha, "tate_cocycle");
    require_traceless(beta, "tate_cocycle");
    long needed = std::max(matrix_degree(alpha), matrix_degree(beta));
    if (w.depth < needed)
        throw window_too_small_error("cocycle window must reach the degree of the arguments");
    LaurentMatrix comm = alpha * beta - beta * alpha;
    Rational at_m = cocycle_at_depth(alpha, beta, w.depth, comm);
    Rational at_m1 = cocycle_at_depth(alpha, beta, w.depth + 1, comm);
    if (at_m != at_m1) throw unstable_trace_error();
    return at_m;
}

namespace {

// Projection onto V' = span{(z^-n + z^n) e_i} along O^r: the coordinates are
// the negative coefficients, and each carries a reflected positive tail.
KVector project_vprime(const KVector& v) {
    KVector out;
    out.reserve(v.size());
    for (const auto& f : v) {
        TruncatedLaurent neg = negative_part(f);
        std::map<long, Rational> tail;
        for (const auto& [e, c] : neg.coeffs()) tail[-e] = c;
        out.push_back(neg + TruncatedLaurent::exact_from_coeffs(tail));
    }
    return out;
}

KVector apply_a_vprime(const LaurentMatrix& gamma, const KVector& v) {
    long r = gamma.rank();
    KVector prod(static_cast<size_t>(r));
    for (long i = 0; i < r; ++i) {
        TruncatedLaurent acc;
        bool assigned = false;
        for (long k = 0; k < r; ++k) {
            TruncatedLaurent term = series_mul(gamma.at(i, k), v[static_cast<size_t>(k)]);
            acc = assigned ? acc + term : term;
            assigned = true;
        }
        prod[static_cast<size_t>(i)] = acc;
    }
    return project_vprime(prod);
}

KVector basis_vprime(long n, long i, long r) {
    KVector v(static_cast<size_t>(r));
    std::map<long, Rational> c;
    c[-n] = 1;
    c[n] = 1;
    v[static_cast<size_t>(i)] = TruncatedLaurent::exact_from_coeffs(c);
    return v;
}

Rational cocycle_alt_at_depth(const LaurentMatrix& alpha, const LaurentMatrix& beta, long depth,
                              const LaurentMatrix& comm) {
    long r = alpha.rank();
    Rational total(0);
    for (long n = 1; n <= depth; ++n)
        for (long i = 0; i < r; ++i) {
            KVector v = basis_vprime(n, i, r);
            KVector w1 = apply_a_vprime(alpha, apply_a_vprime(beta, v));
            KVector w2 = apply_a_vprime(beta, apply_a_vprime(alpha, v));
            KVector w3 = apply_a_vprime(comm, v);
            total += w1[static_cast<size_t>(i)].coeff(-n) - w2[static_cast<size_t>(i)].coeff(-n) -
                     w3[static_cast<size_t>(i)].coeff(-n);
        }
    return total;
}

} // namespace

Rational tate_cocycle_alt_basis(const LaurentMatrix& alpha, const LaurentMatrix& beta,
                                const WindowSpec& w) {
    if (alpha.rank() != 2) throw invalid_input_error("alternative-basis witness is rank 2 only");
    require_traceless(alpha, "tate_cocycle");
    require_traceless(beta, "tate_cocycle");
    long needed = std::max(matrix_degree(alpha), matrix_degree(beta)) +
                  std::max(matrix_pole_order(alpha), matrix_pole_order(beta));
    if (w.depth < needed)
        throw window_too_small_error("cocycle window must reach the degree of the arguments");
    LaurentMatrix comm = alpha * beta - beta * alpha;
    Rational at_m = cocycle_alt_at_depth(alpha, beta, w.depth, comm);
    Rational at_m1 = cocycle_alt_at_depth(alpha, beta, w.depth + 1, comm);
    if (at_m != at_m1) throw unstable_trace_error();
    return at_m;
}

CentralElement::CentralElement(LaurentMatrix alpha, Rational s)
    : alpha_(std::move(alpha)), s_(std::move(s)) {
    require_traceless(alpha_, "CentralElement");
}

CentralElement hat_bracket(const CentralElement& x, const CentralElement& y) {
    LaurentMatrix comm = x.alpha() * y.alpha() - y.alpha() * x.alpha();
    return CentralElement(comm, residue_pairing(x.alpha(), y.alpha()));
}

CentralElement adjoint_action(const LaurentMatrix& gamma, const CentralElement& x,
                              const PrecisionContext& ctx) {
    LaurentMatrix gamma_inv = mat_inverse(gamma, ctx);
    LaurentMatrix conj = gamma * x.alpha() * gamma_inv;
    TruncatedLaurent tr = (gamma_inv * matrix_derivative(gamma) * x.alpha()).trace();
    return CentralElement(conj, x.s() + tr.coeff(-1));
}

namespace {

struct DualMatrix {
    LaurentMatrix val;
    LaurentMatrix der;
};

DualMatrix dual_mul(const DualMatrix& a, const DualMatrix& b) {
    return {a.val * b.val, a.der * b.val + a.val * b.der};
}

DualMatrix dual_inverse(const DualMatrix& a, const PrecisionContext& ctx) {
    LaurentMatrix vi = mat_inverse(a.val, ctx);
    LaurentMatrix di = LaurentMatrix::zero(a.val.rank()) - vi * a.der * vi;
    return {vi, di};
}

DualMatrix dual_z_derivative(const DualMatrix& a) {
    return {matrix_derivative(a.val), matrix_derivative(a.der)};
}

} // namespace

CentralElement adjoint_first_order(const LaurentMatrix& beta, const CentralElement& x,
                                   const PrecisionContext& ctx) {
    long r = beta.rank();
    DualMatrix gamma{LaurentMatrix::identity(r), beta};
    DualMatrix gamma_inv = dual_inverse(gamma, ctx);
    DualMatrix alpha{x.alpha(), LaurentMatrix::zero(r)};
    DualMatrix conj = dual_mul(dual_mul(gamma, alpha), gamma_inv);
    DualMatrix correction = dual_mul(dual_mul(gamma_inv, dual_z_derivative(gamma)), alpha);
    Rational corr_eps = correction.der.trace().coeff(-1);
    return CentralElement(conj.der, corr_eps);
}

Rational finite_rank_det(const FiniteOperator& v) {
    if (!v.tail_identity) throw invalid_input_error("determinant needs an I + finite-rank operator");
    long n = v.window.dim();
    if (static_cast<long>(v.matrix.size()) != n) throw invalid_input_error("window block size mismatch");
    QMatrix m = v.matrix;
    for (long i = 0; i < n; ++i) m[i][i] += 1;
    return q_det(m);
}

Rational chi0(const LaurentMatrix& delta, const FiniteOperator& lift_perturbation) {
    if (matrix_pole_order(delta) > 0)
        throw not_in_stabilizer_error("chi0 requires an element of SL_r(k[[z]])");
    if (!mat_det(delta).equal_on_common_window(TruncatedLaurent::exact_constant(Rational(1))))
        throw invalid_input_error("chi0 requires det = 1");
    const WindowSpec& w = lift_perturbation.window;
    if (w.rank != delta.rank()) throw invalid_input_error("window rank mismatch");
    QMatrix a = block_a(delta, w);
    QMatrix a_inv = q_inverse(a); // invertible: delta preserves O^r
    long n = w.dim();
    QMatrix ipv = lift_perturbation.matrix;
    for (long i = 0; i < n; ++i) ipv[i][i] += 1;
    QMatrix u = q_mul(a, ipv);
    return q_det(q_mul(a_inv, u));
}

// ---------------------------------------------------------------------------
// tau

namespace {

// a(z^d) made bijective: killed basis lines (strands with d_i > 0) are routed
// onto the created lines (strands with d_j < 0) in a fixed order.
struct ShiftAdjustment {
    std::vector<long> d;
    std::vector<std::pair<long, long>> killed;  // (strand, depth)
    std::vector<std::pair<long, long>> created; // (strand, depth)

    explicit ShiftAdjustment(const std::vector<long>& dv) : d(dv) {
        for (long i = 0; i < static_cast<long>(d.size()); ++i) {
            for (long n = 1; n <= d[i]; ++n) killed.push_back({i, n});
            for (long m = 1; m <= -d[i]; ++m) created.push_back({i, m});
        }
    }

    KVector apply(const KVector& v) const {
        long r = static_cast<long>(v.size());
        KVector out(static_cast<size_t>(r));
        for (size_t k = 0; k < killed.size(); ++k) {
            auto [i, n] = killed[k];
            Rational c = v[static_cast<size_t>(i)].coeff(-n);
            if (c != 0) {
                auto [j, m] = created[k];
                out[static_cast<size_t>(j)] =
                    out[static_cast<size_t>(j)] + TruncatedLaurent::exact_monomial(c, -m);
            }
        }
        for (long i = 0; i < r; ++i) {
            TruncatedLaurent rest = v[static_cast<size_t>(i)];
            for (long n = 1; n <= d[static_cast<size_t>(i)]; ++n) {
                Rational c = rest.coeff(-n);
                if (c != 0) rest = rest - TruncatedLaurent::exact_monomial(c, -n);
            }
            out[static_cast<size_t>(i)] =
                out[static_cast<size_t>(i)] + negative_part(rest.shifted(d[static_cast<size_t>(i)]));
        }
        return out;
    }
};

KVector apply_window_perturbation(const FiniteOperator& pert, const KVector& v) {
    long r = pert.window.rank;
    long M = pert.window.depth;
    std::vector<Rational> coords(static_cast<size_t>(pert.window.dim()), Rational(0));
    for (long n = 1; n <= M; ++n)
        for (long j = 0; j < r; ++j) coords[(n - 1) * r + j] = v[static_cast<size_t>(j)].coeff(-n);
    KVector out = v;
    for (long m = 1; m <= M; ++m)
        for (long j = 0; j < r; ++j) {
            Rational acc(0);
            for (long idx = 0; idx < pert.window.dim(); ++idx)
                acc += pert.matrix[(m - 1) * r + j][idx] * coords[static_cast<size_t>(idx)];
            if (acc != 0)
                out[static_cast<size_t>(j)] =
                    out[static_cast<size_t>(j)] + TruncatedLaurent::exact_monomial(acc, -m);
        }
    return out;
}

Rational tau_impl(const LaurentMatrix& gamma, const FiniteOperator* pert, const WindowSpec& w,
                  const PrecisionContext& ctx) {
    long r = gamma.rank();
    if (w.rank != r) throw invalid_input_error("window rank mismatch");
    if (!mat_det(gamma).equal_on_common_window(TruncatedLaurent::exact_constant(Rational(1))))
        throw invalid_input_error("tau requires det = 1");

    long p = matrix_pole_order(gamma);
    long q = std::max<long>(0, matrix_degree(gamma));
    long M = std::max(w.depth, r * (p + q) + 2);
    long cap = std::max({ctx.max_high, 4 * M + 8, 64L});

    PrecisionContext inner(std::max(ctx.target_high, cap + p + 4), std::max(ctx.max_high, cap + p + 4));
    BirkhoffFactorization bf = birkhoff_full(gamma, inner);
    LaurentMatrix gamma_inv = mat_inverse(gamma, inner);
    ShiftAdjustment wd(bf.d.values());
    if (pert != nullptr && pert->window.rank != r)
        throw invalid_input_error("perturbation rank mismatch");

    while (true) {
        long big = M + 2;
        std::vector<KVector> cols;
        cols.reserve(static_cast<size_t>(big * r));
        long leak = 0;
        for (long n = 1; n <= big; ++n)
            for (long i = 0; i < r; ++i) {
                KVector col = apply_a(gamma_inv, basis_vector(n, i, r));
                if (pert != nullptr) col = apply_window_perturbation(*pert, col);
                col = apply_a(bf.gamma_plus, col);
                col = wd.apply(col);
                col = apply_a(bf.gamma_minus, col);
                leak = std::max(leak, vector_depth(col));
                cols.push_back(std::move(col));
            }
        if (leak > big) {
            M = leak + 2;
            if (M > cap) throw window_too_small_error("tau window exceeded the refinement cap");
            continue;
        }
        // margin columns must already be fixed vectors
        bool margin_ok = true;
        for (long n = M + 1; n <= big && margin_ok; ++n)
            for (long i = 0; i < r && margin_ok; ++i) {
                const KVector& col = cols[static_cast<size_t>((n - 1) * r + i)];
                for (long m = 1; m <= big && margin_ok; ++m)
                    for (long j = 0; j < r && margin_ok; ++j) {
                        Rational expect = (m == n && j == i) ? Rational(1) : Rational(0);
                        if (col[static_cast<size_t>(j)].coeff(-m) != expect) margin_ok = false;
                    }
            }
        if (!margin_ok) {
            M *= 2;
            if (M > cap) throw window_too_small_error("tau window failed to stabilize");
            continue;
        }
        long dim = big * r;
        QMatrix block(static_cast<size_t>(dim), std::vector<Rational>(static_cast<size_t>(dim), Rational(0)));
        for (long n = 1; n <= big; ++n)
            for (long i = 0; i < r; ++i) {
                const KVector& col = cols[static_cast<size_t>((n - 1) * r + i)];
                for (long m = 1; m <= big; ++m)
                    for (long j = 0; j < r; ++j)
                        block[(m - 1) * r + j][(n - 1) * r + i] = col[static_cast<size_t>(j)].coeff(-m);
            }
        return q_det(block);
    }
}

} // namespace

Rational tau(const LaurentMatrix& gamma, const WindowSpec& w, const PrecisionContext& ctx) {
    return tau_impl(gamma, nullptr, w, ctx);
}

Rational tau_with_perturbation(const LaurentMatrix& gamma, const FiniteOperator& pert,
                               const WindowSpec& w, const PrecisionContext& ctx) {
    return tau_impl(gamma, &pert, w, ctx);
}

Rational tau_shifted(const LaurentMatrix& delta, const LaurentMatrix& gamma, const WindowSpec& w,
                     const PrecisionContext& ctx) {
    if (!mat_det(delta).equal_on_common_window(TruncatedLaurent::exact_constant(Rational(1))))
        throw invalid_input_error("tau_shifted requires det delta = 1");
    LaurentMatrix shifted = mat_inverse(delta, ctx) * gamma;
    return tau_impl(shifted, nullptr, w, ctx);
}

} // namespace loom
