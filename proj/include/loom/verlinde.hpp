#pragma once

#include <vector>

#include "loom/cyclotomic.hpp"
#include "loom/interval.hpp"
#include "loom/rational.hpp"

namespace loom {

struct VerlindeQuery {
    long rank;  // r >= 2
    long level; // c >= 0
    long genus; // g >= 0

    VerlindeQuery(long r, long c, long g);
};

enum class VerlindeBackend { interval, exact };

// Dominant weight of level c in rank r-1: c >= l1 >= ... >= l_{r-1} >= 0.
struct WeightLabel {
    std::vector<long> parts;
};

// Subset of [1, r+c] of size r, kept strictly decreasing.
struct SubsetLabel {
    std::vector<long> elements;
};

// dim H^0(SU_X(r), L^c) by the sine sum over r-subsets of [1, r+c],
// certified either by interval snapping (with automatic precision
// escalation) or by exact cyclotomic evaluation.
Integer verlinde_number(const VerlindeQuery& q, VerlindeBackend backend);

// One certified interval per subset, in colexicographic subset order.
std::vector<std::pair<SubsetLabel, Interval>> verlinde_terms(const VerlindeQuery& q);

// s_i = lambda_i + (r - i) + 1 with lambda_r = 0.
SubsetLabel weight_to_subset(const WeightLabel& lambda, long r, long c);

// The weight c * omega_{r-d} attached to degree-d moduli, 0 < d < r.
WeightLabel weight_for_degree(long r, long c, long d);

// All level-c dominant weights of rank r-1, in lexicographic order.
std::vector<WeightLabel> level_weights(long r, long c);

// Independent diagonalized form of the same count, summed over weights and
// snapped from certified intervals. Its normalization constant is validated
// against two hand-derived anchor values before the first result is
// returned.
Integer smatrix_oracle(const VerlindeQuery& q);

Integer binomial(long n, long k);

} // namespace loom
