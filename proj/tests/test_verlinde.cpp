#include "doctest.h"
#include "loom/error.hpp"
#include "loom/verlinde.hpp"

using namespace loom;

TEST_CASE("genus zero gives one") {
    for (long r = 2; r <= 5; ++r)
        for (long c = 0; c <= 6; ++c) {
            VerlindeQuery q(r, c, 0);
            CHECK(verlinde_number(q, VerlindeBackend::exact) == 1);
            CHECK(verlinde_number(q, VerlindeBackend::interval) == 1);
        }
}

TEST_CASE("anchor values") {
    CHECK(verlinde_number(VerlindeQuery(3, 2, 1), VerlindeBackend::exact) == 6);
    CHECK(verlinde_number(VerlindeQuery(2, 2, 2), VerlindeBackend::exact) == 10);
    CHECK(verlinde_number(VerlindeQuery(2, 2, 2), VerlindeBackend::interval) == 10);
    CHECK(verlinde_number(VerlindeQuery(2, 1, 2), VerlindeBackend::exact) == 4);
}

TEST_CASE("genus one counts level weights") {
    for (long r = 2; r <= 4; ++r)
        for (long c = 0; c <= 4; ++c) {
            VerlindeQuery q(r, c, 1);
            Integer expect = binomial(r + c - 1, r - 1);
            CHECK(verlinde_number(q, VerlindeBackend::exact) == expect);
            CHECK(static_cast<long>(level_weights(r, c).size()) == expect.get_si());
        }
}

TEST_CASE("level one gives r^g") {
    for (long r = 2; r <= 4; ++r)
        for (long g = 0; g <= 4; ++g) {
            Integer expect;
            mpz_ui_pow_ui(expect.get_mpz_t(), static_cast<unsigned long>(r),
                          static_cast<unsigned long>(g));
            CHECK(verlinde_number(VerlindeQuery(r, 1, g), VerlindeBackend::exact) == expect);
        }
}

TEST_CASE("terms decompose the sum") {
    VerlindeQuery q(2, 2, 2);
    auto terms = verlinde_terms(q);
    CHECK(terms.size() == 6);
    // the term for S = {2, 1} encloses 8
    bool found = false;
    for (const auto& [label, iv] : terms)
        if (label.elements == std::vector<long>{2, 1}) {
            found = true;
            CHECK(iv.contains(Rational(8)));
        }
    CHECK(found);
    // sum times prefactor matches verlinde_number
    Interval sum(128);
    for (const auto& [label, iv] : terms) sum = sum + iv;
    Interval total = sum * Interval::from_rational(rat(1, 4));
    CHECK(total.contains(Rational(10)));

    // every genus-1 term is exactly 1 and level-1 terms are powers of 3
    for (const auto& [label, iv] : verlinde_terms(VerlindeQuery(3, 2, 1)))
        CHECK(iv.contains(Rational(1)));
    for (const auto& [label, iv] : verlinde_terms(VerlindeQuery(2, 1, 3)))
        CHECK(iv.contains(Rational(9)));

    // term sums reproduce the snapped dimension across backends and genera
    for (VerlindeQuery query : {VerlindeQuery(3, 2, 2), VerlindeQuery(2, 3, 0)}) {
        Interval acc(256);
        for (const auto& [label, iv] : verlinde_terms(query)) acc = acc + iv;
        Rational pre(1);
        for (long i = 0; i < query.genus; ++i) pre *= rat(query.rank, query.rank + query.level);
        if (query.genus == 0) pre = 1;
        Interval total = acc * Interval::from_rational(pre, 256);
        Integer expect = verlinde_number(query, VerlindeBackend::exact);
        CHECK(total.contains(Rational(expect)));
    }
}

TEST_CASE("subset rotation leaves the term product unchanged") {
    VerlindeQuery q(3, 2, 2);
    long n = q.rank + q.level;
    auto terms = verlinde_terms(q);
    // index terms by their subset
    auto product_of = [&](std::vector<long> subset) {
        std::sort(subset.rbegin(), subset.rend());
        for (const auto& [label, iv] : terms)
            if (label.elements == subset) return iv;
        FAIL("subset not found");
        return Interval(128);
    };
    for (const auto& [label, iv] : terms) {
        std::vector<long> rotated;
        for (long s : label.elements) rotated.push_back(s % n + 1);
        Interval other = product_of(rotated);
        // equal reals: the certified intervals must overlap
        CHECK(iv.lo_rational() <= other.hi_rational());
        CHECK(other.lo_rational() <= iv.hi_rational());
    }
}

TEST_CASE("weight and subset dictionaries") {
    WeightLabel zero{std::vector<long>(1, 0)};
    CHECK(weight_to_subset(zero, 2, 1).elements == std::vector<long>{2, 1});
    CHECK(weight_to_subset(WeightLabel{{1}}, 2, 1).elements == std::vector<long>{3, 1});
    CHECK(weight_to_subset(WeightLabel{{2, 1}}, 3, 2).elements == std::vector<long>{5, 3, 1});
    CHECK_THROWS_AS(weight_to_subset(WeightLabel{{3}}, 2, 1), invalid_weight_error);
    CHECK_THROWS_AS(weight_to_subset(WeightLabel{{0, 1}}, 3, 1), invalid_weight_error);

    CHECK(weight_for_degree(3, 2, 1).parts == std::vector<long>{2, 2});
    CHECK(weight_for_degree(2, 5, 1).parts == std::vector<long>{5});
    CHECK(weight_for_degree(4, 1, 3).parts == std::vector<long>{1, 0, 0});
    CHECK_THROWS_AS(weight_for_degree(3, 2, 3), degree_out_of_range_error);
}

TEST_CASE("oracle hand values and agreement") {
    CHECK(smatrix_oracle(VerlindeQuery(2, 1, 2)) == 4);
    CHECK(smatrix_oracle(VerlindeQuery(2, 2, 2)) == 10);
    for (long r = 2; r <= 4; ++r)
        for (long c = 0; c <= 3; ++c)
            for (long g = 0; g <= 3; ++g) {
                VerlindeQuery q(r, c, g);
                Integer direct = verlinde_number(q, VerlindeBackend::interval);
                CHECK(smatrix_oracle(q) == direct);
                CHECK(direct >= 1);
            }
}

TEST_CASE("unsupported ranges are rejected") {
    CHECK_THROWS_AS(VerlindeQuery(1, 0, 0), invalid_input_error);
    CHECK_THROWS_AS(VerlindeQuery(2, 15, 0), unsupported_range_error);
    CHECK_THROWS_AS(VerlindeQuery(2, 2, 9), unsupported_range_error);
}
