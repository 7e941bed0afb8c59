#include "loom/selftest.hpp"

#include <cmath>
#include <random>

#include "loom/cohomology.hpp"
#include "loom/cyclotomic.hpp"
#include "loom/error.hpp"
#include "loom/extension.hpp"
#include "loom/grassmann.hpp"
#include "loom/interval.hpp"
#include "loom/laurent.hpp"
#include "loom/sampling.hpp"
#include "loom/verlinde.hpp"

namespace loom {

namespace {

struct Reporter {
    std::ostream& log;
    int failures = 0;

    void block(const char* name, bool ok) {
        log << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    }
};

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 9);
    return rat(num(rng), den(rng));
}

bool arith_suite(std::mt19937_64& rng) {
    for (int t = 0; t < 100; ++t) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        if ((a + b) * c != a * c + b * c) return false;
        if (a != 0 && a * (1 / a) != 1) return false;
    }
    for (int t = 0; t < 200; ++t) {
        Rational a = random_rational(rng), b = random_rational(rng);
        Rational exact = a * a - b;
        Interval got = Interval::from_rational(a) * Interval::from_rational(a) -
                       Interval::from_rational(b);
        if (!got.contains(exact)) return false;
    }
    for (long n = 2; n <= 12; ++n)
        for (long k = 1; k < n; ++k) {
            Cyclotomic s = sin2_exact(k, n);
            if (!(s == sin2_exact(n - k, n)) || !s.is_real()) return false;
            double approx = 2.0 * std::sin(M_PI * double(k) / double(n));
            Interval hull = s.to_interval(128);
            if (hull.lo_double() > approx + 1e-9 || hull.hi_double() < approx - 1e-9) return false;
        }
    return true;
}

bool laurent_suite(std::mt19937_64& rng) {
    PrecisionContext ctx(20, 80);
    std::uniform_int_distribution<long> coeff(-3, 3);
    auto rand_poly = [&](long lo, long hi) {
        std::map<long, Rational> c;
        for (long e = lo; e <= hi; ++e) c[e] = Rational(coeff(rng));
        return TruncatedLaurent::exact_from_coeffs(c);
    };
    for (int t = 0; t < 30; ++t) {
        TruncatedLaurent a = rand_poly(-2, 2), b = rand_poly(-1, 2), c = rand_poly(0, 2);
        if (!series_mul(a, b).equal_exact(series_mul(b, a))) return false;
        if (!series_mul(series_mul(a, b), c).equal_exact(series_mul(a, series_mul(b, c))))
            return false;
    }
    for (int t = 0; t < 15; ++t) {
        LaurentMatrix a = sample_sl_zd_times_o(rng, 2, 1, 1);
        LaurentMatrix b = sample_sl_zd_times_o(rng, 2, 1, 1);
        if (order(mat_det(a * b)) != order(mat_det(a)) + order(mat_det(b))) return false;
        if (pole_bound(a, ctx) != pole_bound(mat_inverse(a, ctx), ctx)) return false;
    }
    return true;
}

bool grassmann_suite(std::mt19937_64& rng) {
    PrecisionContext ctx(24, 96);
    for (int t = 0; t < 15; ++t) {
        long r = 2 + (t % 2);
        LaurentMatrix m = sample_sl_zd_times_o(rng, r, 2, 1);
        DVector d0 = lattice_dvector(Lattice(m), ctx);
        if (lattice_dvector(Lattice(m * sample_sl_o(rng, r, 2)), ctx) != d0) return false;
    }
    for (int t = 0; t < 15; ++t) {
        long r = 2 + (t % 2);
        DVector d = sample_special_dvector(rng, r, 2);
        LaurentMatrix gamma = LaurentMatrix::z_power(d.values()) * sample_sl_o(rng, r, 1);
        auto f = birkhoff_full(gamma, ctx);
        if (f.d != d || lattice_dvector(Lattice(gamma), ctx) != d) return false;
        auto f2 = birkhoff_full(sample_sl_zinv(rng, r, 1) * gamma * sample_sl_o(rng, r, 1), ctx);
        if (f2.d != d) return false;
    }
    for (int t = 0; t < 15; ++t) {
        long r = 2 + (t % 2);
        long n = 1 + (t % 2);
        if (infinity_invariant_factors(sample_unimodular_poly(rng, r, n), n).sum() != r * n)
            return false;
    }
    for (long d1 = -2; d1 <= 2; ++d1)
        for (long d2 = d1 + 1; d2 <= 2; ++d2)
            if (!degeneration_identity_check(d1, d2).ok) return false;
    return true;
}

bool extension_suite(std::mt19937_64& rng) {
    PrecisionContext ctx(24, 96);
    for (int t = 0; t < 50; ++t) {
        long r = 2 + (t % 2);
        LaurentMatrix a = sample_traceless(rng, r, 3, 3);
        LaurentMatrix b = sample_traceless(rng, r, 3, 3);
        WindowSpec w(r * 6 + 2, r);
        if (tate_cocycle(a, b, w) != residue_pairing(a, b)) return false;
        if (tate_cocycle(a, b, w) != -tate_cocycle(b, a, w)) return false;
    }
    for (int t = 0; t < 20; ++t) {
        long r = 2 + (t % 2);
        CentralElement x(sample_traceless(rng, r, 2, 2), rat(1, 2));
        CentralElement y(sample_traceless(rng, r, 2, 2), rat(2, 3));
        CentralElement z(sample_traceless(rng, r, 2, 2), Rational(1));
        CentralElement j1 = hat_bracket(hat_bracket(x, y), z);
        CentralElement j2 = hat_bracket(hat_bracket(y, z), x);
        CentralElement j3 = hat_bracket(hat_bracket(z, x), y);
        if (!(j1.alpha() + j2.alpha() + j3.alpha()).equal_on_common_window(LaurentMatrix::zero(r)))
            return false;
        if (j1.s() + j2.s() + j3.s() != 0) return false;
    }
    for (int t = 0; t < 10; ++t) {
        long r = 2 + (t % 2);
        LaurentMatrix g = sample_sl_o(rng, r, 2);
        LaurentMatrix d = sample_sl_zinv(rng, r, 2);
        CentralElement x(sample_traceless(rng, r, 2, 2), Rational(0));
        CentralElement lhs = adjoint_action(g * d, x, ctx);
        CentralElement rhs = adjoint_action(g, adjoint_action(d, x, ctx), ctx);
        if (!lhs.alpha().equal_on_common_window(rhs.alpha()) || lhs.s() != rhs.s()) return false;
        LaurentMatrix beta = sample_traceless(rng, r, 2, 2);
        CentralElement fo = adjoint_first_order(beta, x, ctx);
        CentralElement br = hat_bracket(CentralElement(beta, Rational(0)), x);
        if (!fo.alpha().equal_on_common_window(br.alpha()) || fo.s() != br.s()) return false;
    }
    for (int t = 0; t < 30; ++t) {
        long r = 2 + (t % 2);
        if (residue_pairing(sample_traceless_zinv(rng, r, 4), sample_traceless_zinv(rng, r, 4)) != 0)
            return false;
    }
    for (int t = 0; t < 4; ++t) {
        long r = 2 + (t % 2);
        LaurentMatrix gamma = sample_sl_ominus(rng, r, 2) * sample_sl_o(rng, r, 1);
        WindowSpec w(4, r);
        Rational base = tau(gamma, w, ctx);
        if (tau(gamma * sample_sl_o(rng, r, 2), w, ctx) != base) return false;
        if (tau(gamma, WindowSpec(6, r), ctx) != base) return false;
    }
    return true;
}

bool cohomology_suite(std::mt19937_64& rng) {
    PrecisionContext ctx(24, 96);
    int eps = calibrated_epsilon();
    for (int t = 0; t < 6; ++t) {
        long r = 2 + (t % 2);
        LaurentMatrix gamma = sample_sl_zd_times_o(rng, r, 1, 1);
        if (euler_characteristic(gamma, ctx) != r) return false;
        if (euler_characteristic(gamma.shifted(1), ctx) != eps * r + r) return false;
        DVector st = splitting_type(gamma, ctx);
        if (cohomology_p1(gamma, ctx).h0 != label_h0(st)) return false;
        if (!theta_tau_check(gamma, ctx)) return false;
    }
    for (std::vector<long> d : {std::vector<long>{-1, 1}, {-2, 0, 2}}) {
        if (cohomology_p1(LaurentMatrix::z_power(d), ctx).h0 != diagonal_h0_closed_form(DVector(d)))
            return false;
    }
    return true;
}

bool verlinde_suite() {
    for (long r = 2; r <= 4; ++r)
        for (long c = 0; c <= 4; ++c)
            if (verlinde_number(VerlindeQuery(r, c, 0), VerlindeBackend::exact) != 1) return false;
    for (long r = 2; r <= 3; ++r)
        for (long c = 0; c <= 2; ++c)
            for (long g = 0; g <= 2; ++g) {
                VerlindeQuery q(r, c, g);
                Integer iv = verlinde_number(q, VerlindeBackend::interval);
                if (verlinde_number(q, VerlindeBackend::exact) != iv) return false;
                if (smatrix_oracle(q) != iv) return false;
            }
    if (verlinde_number(VerlindeQuery(2, 2, 2), VerlindeBackend::exact) != 10) return false;
    if (verlinde_number(VerlindeQuery(2, 1, 2), VerlindeBackend::exact) != 4) return false;
    return true;
}

} // namespace

int run_selftest(unsigned long seed, std::ostream& log) {
    Reporter rep{log};
    std::mt19937_64 rng(seed);
    rep.block("arith: field axioms, interval soundness, cyclotomic hulls", arith_suite(rng));
    rep.block("laurent: ring laws, det orders, pole bounds", laurent_suite(rng));
    rep.block("grassmann: lattice invariance, Birkhoff round trip, strata", grassmann_suite(rng));
    rep.block("extension: Tate identity, bracket, adjoint, tau", extension_suite(rng));
    rep.block("cohomology: Euler, splitting, theta", cohomology_suite(rng));
    rep.block("verlinde: normalizations, backend and oracle agreement", verlinde_suite());
    return rep.failures;
}

} // namespace loom
