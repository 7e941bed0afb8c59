#include "loom/cohomology.hpp"

#include <mutex>

#include "loom/error.hpp"
#include "loom/extension.hpp"
#include "loom/qlinalg.hpp"

namespace loom {

namespace {

// The kernel and cokernel of f -> gamma^-1 f mod O^r are linearized without
// touching infinite unit series: with n = ord(det gamma),
//   f lies in gamma O^r         <=>  adj(gamma) f lies in z^n O^r,
//   [v] lies in the image       <=>  det(gamma) v = adj(gamma) f mod z^n O^r
// for some polynomial f. Both sides are exact Laurent polynomials, so the
// conditions are finite row systems.
struct SequenceData {
    LaurentMatrix adj;
    TruncatedLaurent det;
    long n = 0;    // order of det
    long a_lo = 0; // exponent range of the adjugate entries
    long a_hi = 0;
};

SequenceData sequence_data(const LaurentMatrix& gamma) {
    SequenceData d{mat_adjugate(gamma), mat_det(gamma)};
    d.n = order(d.det);
    long lo = 0, hi = 0;
    bool seen = false;
    for (long i = 0; i < gamma.rank(); ++i)
        for (long j = 0; j < gamma.rank(); ++j) {
            const auto& e = d.adj.at(i, j);
            if (e.coeffs().empty()) continue;
            long elo = e.coeffs().begin()->first;
            long ehi = e.coeffs().rbegin()->first;
            lo = seen ? std::min(lo, elo) : elo;
            hi = seen ? std::max(hi, ehi) : ehi;
            seen = true;
        }
    if (!seen) throw not_invertible_error("adjugate vanishes");
    d.a_lo = lo;
    d.a_hi = hi;
    return d;
}

struct TruncatedRanks {
    long h0;
    long h1;
};

TruncatedRanks ranks_at(const SequenceData& data, long r, long D) {
    long dc = std::max(D, data.a_hi + D - data.n) + 2; // top source degree
    long row_lo = std::min(data.a_lo - dc, data.n - D);
    long rows = (data.n - row_lo) * r;
    long vcols = D * r;
    long fcols = (dc + 1) * r;

    QMatrix ab(static_cast<size_t>(rows), std::vector<Rational>(static_cast<size_t>(vcols + fcols), Rational(0)));
    // v-columns: det * z^-m e_l, depth m = 1..D
    for (long m = 1; m <= D; ++m)
        for (long l = 0; l < r; ++l)
            for (long e = row_lo; e < data.n; ++e) {
                Rational c = data.det.coeff(e + m);
                if (c != 0) ab[(e - row_lo) * r + l][(m - 1) * r + l] = c;
            }
    // f-columns: adj * z^-j e_i, degree j = 0..dc
    for (long j = 0; j <= dc; ++j)
        for (long i = 0; i < r; ++i)
            for (long l = 0; l < r; ++l) {
                const auto& entry = data.adj.at(l, i);
                for (const auto& [ex, c] : entry.coeffs()) {
                    long e = ex - j;
                    if (e >= row_lo && e < data.n) ab[(e - row_lo) * r + l][vcols + j * r + i] = c;
                }
            }

    QMatrix b(static_cast<size_t>(rows), std::vector<Rational>(static_cast<size_t>(fcols), Rational(0)));
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < fcols; ++j) b[i][j] = ab[i][vcols + j];

    long rank_ab = q_rank(ab);
    long rank_b = q_rank(b);
    return {fcols - rank_b, rank_ab - rank_b};
}

} // namespace

CohomologyResult cohomology_p1(const LaurentMatrix& gamma, const PrecisionContext& ctx,
                               long start_depth) {
    long r = gamma.rank();
    SequenceData data = sequence_data(gamma);
    long start = start_depth > 0 ? start_depth : pole_bound(gamma, ctx) + r + 2;
    long cap = std::max(ctx.max_high, 4 * start + 32);

    TruncatedRanks prev = ranks_at(data, r, start);
    TruncatedRanks mid = ranks_at(data, r, start + 2);
    for (long d = start + 4; d <= cap; d += 2) {
        TruncatedRanks cur = ranks_at(data, r, d);
        if (prev.h0 == mid.h0 && mid.h0 == cur.h0 && prev.h1 == mid.h1 && mid.h1 == cur.h1) {
            CohomologyResult res;
            res.h0 = cur.h0;
            res.h1 = cur.h1;
            res.euler = cur.h0 - cur.h1;
            res.stabilized_at = d;
            return res;
        }
        prev = mid;
        mid = cur;
    }
    throw precision_exhausted_error("cohomology ranks failed to stabilize");
}

long euler_characteristic(const LaurentMatrix& gamma, const PrecisionContext& ctx) {
    CohomologyResult res = cohomology_p1(gamma, ctx);
    return res.euler;
}

int calibrated_epsilon() {
    static int eps = 0;
    static std::once_flag flag;
    std::call_once(flag, [] {
        PrecisionContext ctx;
        LaurentMatrix z_plus(1, {TruncatedLaurent::exact_monomial(Rational(1), 1)});
        LaurentMatrix z_minus(1, {TruncatedLaurent::exact_monomial(Rational(1), -1)});
        long h0_plus = cohomology_p1(z_plus, ctx).h0;
        long h0_minus = cohomology_p1(z_minus, ctx).h0;
        if (h0_plus == 2 && h0_minus == 0)
            eps = 1;
        else if (h0_minus == 2 && h0_plus == 0)
            eps = -1;
        else
            throw invalid_input_error("rank-one calibration failed");
    });
    return eps;
}

DVector splitting_type(const LaurentMatrix& gamma, const PrecisionContext& ctx) {
    BirkhoffFactorization bf = birkhoff_full(gamma, ctx);
    int eps = calibrated_epsilon();
    std::vector<long> v = bf.d.values();
    if (eps < 0)
        for (auto& x : v) x = -x;
    std::sort(v.begin(), v.end());
    return DVector(v);
}

long diagonal_h0_closed_form(const DVector& d) {
    int eps = calibrated_epsilon();
    long h0 = 0;
    for (long di : d.values()) h0 += std::max<long>(eps * di + 1, 0);
    return h0;
}

long label_h0(const DVector& labels) {
    long h0 = 0;
    for (long l : labels.values()) h0 += std::max<long>(l + 1, 0);
    return h0;
}

bool theta_tau_check(const LaurentMatrix& gamma, const PrecisionContext& ctx) {
    int eps = calibrated_epsilon();
    // the -p twist of E_gamma is cut out by the scalar z^(-eps)
    LaurentMatrix twisted = gamma.shifted(-eps);
    long h0_twist = cohomology_p1(twisted, ctx).h0;
    WindowSpec w(std::max<long>(4, 2 * gamma.rank()), gamma.rank());
    Rational t = tau(gamma, w, ctx);
    return (t == 0) == (h0_twist != 0);
}

} // namespace loom
