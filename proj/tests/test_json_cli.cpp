#include <random>

#include "doctest.h"
#include "loom/error.hpp"
#include "loom/json_io.hpp"
#include "loom/sampling.hpp"

using namespace loom;

TEST_CASE("laurent matrix json round trip") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        long r = 2 + (t % 3);
        LaurentMatrix m = sample_sl_zd_times_o(rng, r, 2, 2);
        Json j = laurent_matrix_to_json(m);
        LaurentMatrix back = laurent_matrix_from_json(j);
        CHECK(back.equal_on_common_window(m));
        // emitted documents are stable fixed points
        CHECK(laurent_matrix_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("windowed matrix json keeps the window") {
    TruncatedLaurent f(std::map<long, Rational>{{0, Rational(1)}, {3, rat(1, 2)}}, -1, 5, false);
    LaurentMatrix m(1, {f});
    Json j = laurent_matrix_to_json(m);
    CHECK(j["window"][0] == -1);
    CHECK(j["window"][1] == 5);
    CHECK(j["exact"] == false);
    LaurentMatrix back = laurent_matrix_from_json(j);
    CHECK_FALSE(back.at(0, 0).exact());
    CHECK(back.at(0, 0).coeff(3) == rat(1, 2));
    CHECK(laurent_matrix_to_json(back).dump() == j.dump());
}

TEST_CASE("dvector and central element json") {
    DVector d({-2, 0, 2});
    CHECK(dvector_from_json(dvector_to_json(d)) == d);

    std::mt19937_64 rng(9);
    CentralElement x(sample_traceless(rng, 2, 2, 2), rat(-7, 3));
    Json j = central_element_to_json(x);
    CentralElement back = central_element_from_json(j);
    CHECK(back.alpha().equal_on_common_window(x.alpha()));
    CHECK(back.s() == x.s());
}

TEST_CASE("bad documents are rejected") {
    CHECK_THROWS_AS(laurent_matrix_from_json(Json::parse("{}")), invalid_input_error);
    CHECK_THROWS_AS(laurent_matrix_from_json(Json::parse(R"({"rank":2,"entries":[[]]})")),
                    invalid_input_error);
    CHECK_THROWS_AS(dvector_from_json(Json::parse(R"({"d":[2,1]})")), invalid_input_error);
}
