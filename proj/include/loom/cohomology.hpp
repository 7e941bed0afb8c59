#pragma once

#include "loom/grassmann.hpp"
#include "loom/laurent.hpp"

namespace loom {

struct CohomologyResult {
    long h0 = 0;
    long h1 = 0;
    long euler = 0;
    long stabilized_at = 0; // truncation degree in force when (h0, h1) settled
};

// Cohomology of the bundle E_gamma on the line, from the truncated exact
// sequence 0 -> H^0 -> A_X^r -> (K/O)^r -> H^1 -> 0. Kernel and cokernel
// dimensions are grown until they agree twice consecutively; start_depth
// overrides the automatic starting truncation when positive.
CohomologyResult cohomology_p1(const LaurentMatrix& gamma, const PrecisionContext& ctx,
                               long start_depth = 0);

long euler_characteristic(const LaurentMatrix& gamma, const PrecisionContext& ctx);

// The single sign relating d-vectors to line-bundle labels: the rank-one
// calibration assigns O(1) to whichever of z, z^-1 has two sections.
int calibrated_epsilon();

// Splitting type of E_gamma: the Birkhoff d-vector relabeled through the
// calibrated sign.
DVector splitting_type(const LaurentMatrix& gamma, const PrecisionContext& ctx);

// h^0 of z^(d) under the calibrated labeling: sum of max(eps*d_i + 1, 0).
long diagonal_h0_closed_form(const DVector& d);

// h^0 of a direct sum of line bundles given by its labels: sum of max(l+1, 0).
long label_h0(const DVector& labels);

// Checks (tau(gamma) = 0) <=> (h^0 of the -p twist of E_gamma != 0).
bool theta_tau_check(const LaurentMatrix& gamma, const PrecisionContext& ctx);

} // namespace loom
