#include "loom/json_io.hpp"

#include "loom/error.hpp"

namespace loom {

Json laurent_matrix_to_json(const LaurentMatrix& m) {
    auto [lo, hi] = m.common_window();
    bool exact = m.all_exact();
    Json entries = Json::array();
    for (long i = 0; i < m.rank(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.rank(); ++j) {
            Json terms = Json::array();
            for (const auto& [e, c] : m.at(i, j).coeffs()) {
                if (!exact && (e < lo || e >= hi)) continue;
                terms.push_back(Json{{"exp", e}, {"coeff", rational_to_string(c)}});
            }
            row.push_back(terms);
        }
        entries.push_back(row);
    }
    Json out;
    out["rank"] = m.rank();
    out["entries"] = entries;
    out["window"] = Json::array({lo, hi});
    out["exact"] = exact;
    return out;
}

LaurentMatrix laurent_matrix_from_json(const Json& j) {
    if (!j.contains("rank") || !j.contains("entries"))
        throw invalid_input_error("matrix JSON needs rank and entries");
    long r = j.at("rank").get<long>();
    if (r < 1) throw invalid_input_error("rank must be positive");
    long lo = 0, hi = 1;
    bool exact = j.value("exact", true);
    if (j.contains("window")) {
        lo = j.at("window").at(0).get<long>();
        hi = j.at("window").at(1).get<long>();
    }
    const Json& entries = j.at("entries");
    if (static_cast<long>(entries.size()) != r) throw invalid_input_error("entry rows do not match rank");
    std::vector<TruncatedLaurent> out;
    out.reserve(static_cast<size_t>(r * r));
    for (long i = 0; i < r; ++i) {
        const Json& row = entries.at(i);
        if (static_cast<long>(row.size()) != r)
            throw invalid_input_error("entry columns do not match rank");
        for (long jj = 0; jj < r; ++jj) {
            std::map<long, Rational> coeffs;
            for (const Json& term : row.at(jj)) {
                long e = term.at("exp").get<long>();
                Rational c = rational_from_string(term.at("coeff").get<std::string>());
                if (c != 0) coeffs[e] += c;
            }
            if (exact)
                out.push_back(TruncatedLaurent::exact_from_coeffs(coeffs));
            else
                out.push_back(TruncatedLaurent(std::move(coeffs), lo, hi, false));
        }
    }
    return LaurentMatrix(r, std::move(out));
}

Json dvector_to_json(const DVector& d) {
    Json out;
    out["d"] = d.values();
    return out;
}

DVector dvector_from_json(const Json& j) {
    if (!j.contains("d")) throw invalid_input_error("d-vector JSON needs a d field");
    return DVector(j.at("d").get<std::vector<long>>());
}

Json birkhoff_to_json(const BirkhoffFactorization& f) {
    Json out;
    out["gamma_minus"] = laurent_matrix_to_json(f.gamma_minus);
    out["d"] = f.d.values();
    out["gamma_plus"] = laurent_matrix_to_json(f.gamma_plus);
    return out;
}

Json central_element_to_json(const CentralElement& x) {
    Json out;
    out["alpha"] = laurent_matrix_to_json(x.alpha());
    out["s"] = rational_to_string(x.s());
    return out;
}

CentralElement central_element_from_json(const Json& j) {
    if (!j.contains("alpha") || !j.contains("s"))
        throw invalid_input_error("central element JSON needs alpha and s");
    return CentralElement(laurent_matrix_from_json(j.at("alpha")),
                          rational_from_string(j.at("s").get<std::string>()));
}

Json cohomology_to_json(const CohomologyResult& r) {
    Json out;
    out["h0"] = r.h0;
    out["h1"] = r.h1;
    out["euler"] = r.euler;
    out["stabilized_at"] = r.stabilized_at;
    return out;
}

} // namespace loom
