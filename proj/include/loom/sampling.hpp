#pragma once

#include <random>

#include "loom/grassmann.hpp"
#include "loom/laurent.hpp"

namespace loom {

// Seeded generators shared by the CLI, the invariant suites and the
// acceptance tests. All output matrices are exact Laurent polynomials,
// so identical seeds reproduce identical fixtures byte for byte.

// Product of elementary transvections with entries in k[[z]] of degree <= deg.
LaurentMatrix sample_sl_o(std::mt19937_64& rng, long r, long deg);

// Same with entries in k[z^-1] of pole order <= deg.
LaurentMatrix sample_sl_zinv(std::mt19937_64& rng, long r, long deg);

// Element of SL_r(O_-): value I at z = infinity.
LaurentMatrix sample_sl_ominus(std::mt19937_64& rng, long r, long deg);

// Weakly increasing with entries in [-N, N] and sum zero.
DVector sample_special_dvector(std::mt19937_64& rng, long r, long N);

// z^d * h with h in SL_r(O); the lattice and Birkhoff invariants both equal d.
LaurentMatrix sample_sl_zd_times_o(std::mt19937_64& rng, long r, long N, long deg);

// Unimodular polynomial matrix in t with entry degree <= N (exact det 1).
LaurentMatrix sample_unimodular_poly(std::mt19937_64& rng, long r, long N);

// Traceless matrix with exponents in [-max_pole, max_deg].
LaurentMatrix sample_traceless(std::mt19937_64& rng, long r, long max_pole, long max_deg);

// Traceless matrix over k[z^-1].
LaurentMatrix sample_traceless_zinv(std::mt19937_64& rng, long r, long max_pole);

} // namespace loom
