#pragma once

#include "loom/error.hpp"
#include "loom/grassmann.hpp"
#include "loom/laurent.hpp"
#include "loom/qlinalg.hpp"

namespace loom {

// Finite slice of V = O_-^r: the basis z^-1, ..., z^-M tensor k^r.
// Basis index (n, i) -> (n-1)*r + i with n = 1..M, i = 0..r-1.
struct WindowSpec {
    long depth;
    long rank;

    WindowSpec(long depth_, long rank_) : depth(depth_), rank(rank_) {
        if (depth < 1 || rank < 1) throw invalid_input_error("window depth and rank must be positive");
    }
    long dim() const { return depth * rank; }
};

// Column vectors over K, used as concrete elements of V (+ O^r tails).
using KVector = std::vector<TruncatedLaurent>;

KVector basis_vector(long n, long i, long r);
// Projection onto V along O^r: drop all exponents >= 0.
KVector project_v(const KVector& v);
// gamma acting on V followed by the projection: the a-operator applied to
// an explicit vector, with exact projection between stages.
KVector apply_a(const LaurentMatrix& gamma, const KVector& v);

// Compression of a(gamma) to the window basis.
QMatrix block_a(const LaurentMatrix& gamma, const WindowSpec& w);

// Res_0 Tr((d alpha / dz) beta), read off exactly from the series.
Rational residue_pairing(const LaurentMatrix& alpha, const LaurentMatrix& beta);

// Tr([a(alpha), a(beta)] - a([alpha, beta])) on the window, with a built-in
// stability certificate: the value is recomputed at depth M+1 and must agree.
Rational tate_cocycle(const LaurentMatrix& alpha, const LaurentMatrix& beta, const WindowSpec& w);

// Same trace computed with the alternative supplement V' spanned by
// (z^-n + z^n) e_i. Witness for the independence of the compression from
// the choice of supplement; rank 2 only.
Rational tate_cocycle_alt_basis(const LaurentMatrix& alpha, const LaurentMatrix& beta,
                                const WindowSpec& w);

// Element (alpha, s) of the centrally extended loop algebra.
class CentralElement {
public:
    CentralElement(LaurentMatrix alpha, Rational s);
    const LaurentMatrix& alpha() const { return alpha_; }
    const Rational& s() const { return s_; }

private:
    LaurentMatrix alpha_;
    Rational s_;
};

// [(alpha,s), (beta,t)] = ([alpha, beta], Res_0 Tr(alpha' beta)).
CentralElement hat_bracket(const CentralElement& x, const CentralElement& y);

// Ad(gamma)(alpha, s) = (gamma alpha gamma^-1, s + Res_0 Tr(gamma^-1 gamma' alpha)).
CentralElement adjoint_action(const LaurentMatrix& gamma, const CentralElement& x,
                              const PrecisionContext& ctx);

// eps-coefficient of Ad(I + eps beta)(x), computed with explicit
// (value, derivative) pairs threaded through the exact arithmetic.
CentralElement adjoint_first_order(const LaurentMatrix& beta, const CentralElement& x,
                                   const PrecisionContext& ctx);

// Finite-rank perturbation supported on a window; the operator is I + matrix
// there and the identity outside when tail_identity is set.
struct FiniteOperator {
    WindowSpec window;
    QMatrix matrix; // the perturbation block v
    bool tail_identity = true;
};

// det(I + v) as the ordinary determinant of the window block.
Rational finite_rank_det(const FiniteOperator& v);

// chi_0 of the lift of delta in SL_r(O) perturbed by I + v:
// det(a(delta)^-1 u) for u = a(delta)(I + v), evaluated on the window.
Rational chi0(const LaurentMatrix& delta, const FiniteOperator& lift_perturbation);

// tau_V(gamma, u) = det(u a(gamma^-1)) with the canonical section
// u = a(gamma_minus) w_d a(gamma_plus) built from the Birkhoff factors;
// w_d is the shift a(z^d) made bijective by pairing killed basis lines with
// created ones. Exactly zero when d != 0.
Rational tau(const LaurentMatrix& gamma, const WindowSpec& w, const PrecisionContext& ctx);

// tau with the canonical u post-composed with I + pert; scales by det(I + pert).
Rational tau_with_perturbation(const LaurentMatrix& gamma, const FiniteOperator& pert,
                               const WindowSpec& w, const PrecisionContext& ctx);

// tau(delta^-1 gamma) with the same canonical normalization.
Rational tau_shifted(const LaurentMatrix& delta, const LaurentMatrix& gamma, const WindowSpec& w,
                     const PrecisionContext& ctx);

} // namespace loom
