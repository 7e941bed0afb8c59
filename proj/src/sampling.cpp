#include "loom/sampling.hpp"

#include "loom/error.hpp"

namespace loom {

namespace {

TruncatedLaurent random_poly_range(std::mt19937_64& rng, long lo, long hi, bool allow_zero = true) {
    std::uniform_int_distribution<long> coeff(-2, 2);
    std::map<long, Rational> c;
    for (long e = lo; e <= hi; ++e) {
        long v = coeff(rng);
        if (v != 0) c[e] = Rational(v);
    }
    if (!allow_zero && c.empty()) c[hi] = Rational(1);
    return TruncatedLaurent::exact_from_coeffs(c);
}

LaurentMatrix transvection(long r, long i, long j, const TruncatedLaurent& p) {
    LaurentMatrix m = LaurentMatrix::identity(r);
    m.at(i, j) = p;
    return m;
}

LaurentMatrix product_of_transvections(std::mt19937_64& rng, long r, long count, long lo, long hi) {
    std::uniform_int_distribution<long> pick(0, r - 1);
    LaurentMatrix acc = LaurentMatrix::identity(r);
    for (long t = 0; t < count; ++t) {
        long i = pick(rng), j = pick(rng);
        if (i == j) j = (j + 1) % r;
        acc = acc * transvection(r, i, j, random_poly_range(rng, lo, hi));
    }
    return acc;
}

} // namespace

LaurentMatrix sample_sl_o(std::mt19937_64& rng, long r, long deg) {
    return product_of_transvections(rng, r, r + 2, 0, deg);
}

LaurentMatrix sample_sl_zinv(std::mt19937_64& rng, long r, long deg) {
    return product_of_transvections(rng, r, r + 2, -deg, 0);
}

LaurentMatrix sample_sl_ominus(std::mt19937_64& rng, long r, long deg) {
    std::uniform_int_distribution<long> pick(0, r - 1);
    LaurentMatrix acc = LaurentMatrix::identity(r);
    for (long t = 0; t < r + 2; ++t) {
        long i = pick(rng), j = pick(rng);
        if (i == j) j = (j + 1) % r;
        acc = acc * transvection(r, i, j, random_poly_range(rng, -deg, -1));
    }
    return acc;
}

DVector sample_special_dvector(std::mt19937_64& rng, long r, long N) {
    std::uniform_int_distribution<long> entry(-N, N);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<long> v(r);
        long sum = 0;
        for (long i = 0; i + 1 < r; ++i) {
            v[i] = entry(rng);
            sum += v[i];
        }
        v[r - 1] = -sum;
        if (std::labs(v[r - 1]) > N) continue;
        std::sort(v.begin(), v.end());
        return DVector(v);
    }
    return DVector(std::vector<long>(r, 0));
}

LaurentMatrix sample_sl_zd_times_o(std::mt19937_64& rng, long r, long N, long deg) {
    DVector d = sample_special_dvector(rng, r, N);
    return LaurentMatrix::z_power(d.values()) * sample_sl_o(rng, r, deg);
}

LaurentMatrix sample_unimodular_poly(std::mt19937_64& rng, long r, long N) {
    std::uniform_int_distribution<long> split(0, N);
    long a = split(rng);
    long b = N - a;
    LaurentMatrix lower = LaurentMatrix::identity(r);
    LaurentMatrix upper = LaurentMatrix::identity(r);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < i; ++j) {
            lower.at(i, j) = random_poly_range(rng, 0, a);
            upper.at(j, i) = random_poly_range(rng, 0, b);
        }
    // constant transvections on both sides spread the support without
    // raising the degree
    LaurentMatrix cl = product_of_transvections(rng, r, 2, 0, 0);
    LaurentMatrix cr = product_of_transvections(rng, r, 2, 0, 0);
    return cl * lower * upper * cr;
}

LaurentMatrix sample_traceless(std::mt19937_64& rng, long r, long max_pole, long max_deg) {
    LaurentMatrix m = LaurentMatrix::zero(r);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j)
            if (i != j) m.at(i, j) = random_poly_range(rng, -max_pole, max_deg);
    for (long i = 0; i + 1 < r; ++i) {
        TruncatedLaurent q = random_poly_range(rng, -max_pole, max_deg);
        m.at(i, i) = m.at(i, i) + q;
        m.at(i + 1, i + 1) = m.at(i + 1, i + 1) - q;
    }
    return m;
}

LaurentMatrix sample_traceless_zinv(std::mt19937_64& rng, long r, long max_pole) {
    return sample_traceless(rng, r, max_pole, 0);
}

} // namespace loom
