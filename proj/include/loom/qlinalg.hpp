#pragma once

#include <optional>
#include <vector>

#include "loom/rational.hpp"

namespace loom {

// Dense rational matrices, row major. Enough Gaussian elimination for the
// kernel/rank/solve needs of the lattice and cohomology computations.
using QMatrix = std::vector<std::vector<Rational>>;

QMatrix q_identity(long n);
QMatrix q_mul(const QMatrix& a, const QMatrix& b);
long q_rank(QMatrix m);
Rational q_det(QMatrix m);
bool q_invertible(const QMatrix& m);
QMatrix q_inverse(const QMatrix& m); // throws not_invertible_error

// Basis of { x : m x = 0 }.
std::vector<std::vector<Rational>> q_nullspace(const QMatrix& m);

// One solution of a x = b per right-hand column (free variables zero),
// or nullopt when the system is inconsistent.
std::optional<QMatrix> q_solve(const QMatrix& a, const QMatrix& b);

} // namespace loom
