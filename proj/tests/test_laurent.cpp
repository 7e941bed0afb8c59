#include <random>

#include "doctest.h"
#include "loom/error.hpp"
#include "loom/laurent.hpp"

using namespace loom;

namespace {

TruncatedLaurent poly(std::initializer_list<std::pair<long, long>> terms) {
    std::map<long, Rational> c;
    for (auto [e, v] : terms) c[e] += Rational(v);
    return TruncatedLaurent::exact_from_coeffs(c);
}

TruncatedLaurent random_poly(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::map<long, Rational> c;
    for (long e = lo; e <= hi; ++e) c[e] = Rational(coeff(rng));
    return TruncatedLaurent::exact_from_coeffs(c);
}

LaurentMatrix mat2(const TruncatedLaurent& a, const TruncatedLaurent& b, const TruncatedLaurent& c,
                   const TruncatedLaurent& d) {
    return LaurentMatrix(2, {a, b, c, d});
}

const TruncatedLaurent kOne = TruncatedLaurent::exact_constant(Rational(1));
const TruncatedLaurent kZero = TruncatedLaurent();

} // namespace

TEST_CASE("series_mul exact products") {
    TruncatedLaurent f = poly({{0, 1}, {1, 1}});  // 1+z
    TruncatedLaurent g = poly({{0, 1}, {1, -1}}); // 1-z
    TruncatedLaurent p = series_mul(f, g);
    CHECK(p.exact());
    CHECK(p.equal_exact(poly({{0, 1}, {2, -1}})));

    CHECK(series_mul(poly({{-1, 1}}), poly({{1, 1}})).equal_exact(kOne));
}

TEST_CASE("series_mul window bookkeeping") {
    // geometric series known up to z^5 times (1 - z) gives 1 with window_high 5
    std::map<long, Rational> geo;
    for (long e = 0; e < 5; ++e) geo[e] = 1;
    TruncatedLaurent f(std::move(geo), 0, 5, false);
    TruncatedLaurent p = series_mul(f, poly({{0, 1}, {1, -1}}));
    CHECK(p.window_high() == 5);
    CHECK(p.equal_on_common_window(kOne));
    CHECK_FALSE(p.exact());
}

TEST_CASE("series_inverse") {
    PrecisionContext ctx(8, 32);
    TruncatedLaurent inv = series_inverse(poly({{0, 1}, {1, -1}}), ctx); // 1/(1-z)
    for (long e = 0; e < 8; ++e) CHECK(inv.coeff(e) == 1);
    CHECK(inv.window_high() == 8);

    // monomial inverse stays exact
    TruncatedLaurent m = series_inverse(poly({{-2, 1}}), ctx);
    CHECK(m.exact());
    CHECK(m.equal_exact(poly({{2, 1}})));

    // 1/(2+z), verified by multiplying back
    TruncatedLaurent f = poly({{0, 2}, {1, 1}});
    TruncatedLaurent g = series_inverse(f, ctx);
    CHECK(g.coeff(0) == rat(1, 2));
    CHECK(g.coeff(1) == rat(-1, 4));
    CHECK(g.coeff(2) == rat(1, 8));
    CHECK(series_mul(f, g).equal_on_common_window(kOne));

    CHECK_THROWS_AS(series_inverse(kZero, ctx), not_a_unit_error);
    CHECK_THROWS_AS(series_inverse(TruncatedLaurent::zero_known_on(0, 4), ctx), not_a_unit_error);
}

TEST_CASE("order") {
    CHECK(order(poly({{-4, 3}, {1, 1}})) == -4);
    CHECK(order(mat_det(LaurentMatrix::z_power({2, -1}))) == 1);
    LaurentMatrix m = mat2(poly({{0, 2}}), poly({{-1, 1}}), poly({{1, 1}}), kOne);
    CHECK(order(mat_det(m)) == 0);
    CHECK_THROWS_AS(order(TruncatedLaurent::zero_known_on(0, 3)), indeterminate_order_error);
}

TEST_CASE("mat_det") {
    CHECK(mat_det(LaurentMatrix::identity(3)).equal_exact(kOne));
    CHECK(mat_det(LaurentMatrix::z_power({-1, 1})).equal_exact(kOne));
    LaurentMatrix m = mat2(poly({{0, 2}}), poly({{-1, 1}}), poly({{1, 1}}), kOne);
    CHECK(mat_det(m).equal_exact(kOne));
    CHECK_THROWS_AS(mat_det(LaurentMatrix::identity(7)), unsupported_rank_error);
}

TEST_CASE("mat_inverse") {
    PrecisionContext ctx(12, 48);
    LaurentMatrix u = mat2(kOne, poly({{1, 1}}), kZero, kOne);
    LaurentMatrix ui = mat_inverse(u, ctx);
    CHECK(ui.at(0, 1).equal_on_common_window(poly({{1, -1}})));
    CHECK((u * ui).is_identity_on_window());

    LaurentMatrix d = LaurentMatrix::z_power({-3, 3});
    LaurentMatrix di = mat_inverse(d, ctx);
    CHECK(di.equal_on_common_window(LaurentMatrix::z_power({3, -3})));

    LaurentMatrix m = mat2(poly({{0, 2}}), poly({{-1, 1}}), poly({{1, 1}}), kOne);
    LaurentMatrix mi = mat_inverse(m, ctx);
    CHECK(mi.equal_on_common_window(mat2(kOne, poly({{-1, -1}}), poly({{1, -1}}), poly({{0, 2}}))));
    CHECK((m * mi).is_identity_on_window());

    CHECK_THROWS_AS(mat_inverse(mat2(kOne, kOne, kOne, kOne), ctx), not_invertible_error);
}

TEST_CASE("pole_bound") {
    PrecisionContext ctx(12, 48);
    CHECK(pole_bound(LaurentMatrix::identity(2), ctx) == 0);
    CHECK(pole_bound(LaurentMatrix::z_power({-3, 3}), ctx) == 3);
    LaurentMatrix m = mat2(poly({{0, 2}}), poly({{-1, 1}}), poly({{1, 1}}), kOne);
    CHECK(pole_bound(m, ctx) == 1);
    CHECK(pole_bound(m, ctx) == pole_bound(mat_inverse(m, ctx), ctx));
}

TEST_CASE("order of det is additive on unit-determinant products") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> exp(-2, 2);
    for (int t = 0; t < 40; ++t) {
        // scaled transvection products: det orders genuinely spread
        auto unit_det = [&]() {
            LaurentMatrix e = LaurentMatrix::identity(2);
            e.at(0, 1) = random_poly(rng, -2, 2);
            LaurentMatrix f = LaurentMatrix::identity(2);
            f.at(1, 0) = random_poly(rng, -2, 2);
            return (e * f).shifted(exp(rng)); // det picks up z^(2*shift)
        };
        LaurentMatrix a = unit_det();
        LaurentMatrix b = unit_det();
        long oa = order(mat_det(a));
        long ob = order(mat_det(b));
        CHECK(order(mat_det(a * b)) == oa + ob);
    }
}

TEST_CASE("double inverse returns to the original") {
    PrecisionContext ctx(16, 64);
    LaurentMatrix m = mat2(poly({{0, 2}}), poly({{-1, 1}}), poly({{1, 1}}), kOne);
    LaurentMatrix m2 = mat_inverse(mat_inverse(m, ctx), ctx);
    CHECK(m2.equal_on_common_window(m));
}

TEST_CASE("series_mul associative and commutative within windows") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 60; ++t) {
        TruncatedLaurent a = random_poly(rng, -2, 3);
        TruncatedLaurent b = random_poly(rng, -1, 2);
        TruncatedLaurent c = random_poly(rng, 0, 2);
        CHECK(series_mul(a, b).equal_exact(series_mul(b, a)));
        CHECK(series_mul(series_mul(a, b), c).equal_exact(series_mul(a, series_mul(b, c))));
    }
}

TEST_CASE("coefficient access outside the window is an error") {
    TruncatedLaurent f(std::map<long, Rational>{{0, Rational(1)}}, 0, 3, false);
    CHECK(f.coeff(2) == 0);
    CHECK(f.coeff(-5) == 0); // below window_low the series is known zero
    CHECK_THROWS_AS(f.coeff(3), window_too_small_error);
}

TEST_CASE("empty product windows are rejected") {
    TruncatedLaurent narrow_a(std::map<long, Rational>{{5, Rational(1)}}, 5, 6, false);
    TruncatedLaurent narrow_b(std::map<long, Rational>{{-6, Rational(1)}}, -6, -5, false);
    // output window [-1, 0) has length one; shrinking further must throw
    TruncatedLaurent ok = series_mul(narrow_a, narrow_b);
    CHECK(ok.window_low() == -1);
    CHECK_THROWS_AS(series_mul(narrow_a.restricted(5, 5), narrow_b), empty_window_error);
}

TEST_CASE("inverse precision exhaustion") {
    PrecisionContext tight(-5, -5); // requested exponent below the order
    CHECK_THROWS_AS(series_inverse(poly({{0, 1}, {1, -1}}), tight), precision_exhausted_error);
}
