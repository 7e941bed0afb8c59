#pragma once

#include <string>

#include "json.hpp"
#include "loom/cohomology.hpp"
#include "loom/extension.hpp"
#include "loom/grassmann.hpp"
#include "loom/laurent.hpp"

namespace loom {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Canonical encoding: { "rank": r, "entries": [[[{"exp": e, "coeff": "p/q"},...]]],
//                       "window": [lo, hi], "exact": bool }
Json laurent_matrix_to_json(const LaurentMatrix& m);
LaurentMatrix laurent_matrix_from_json(const Json& j);

Json dvector_to_json(const DVector& d);
DVector dvector_from_json(const Json& j);

Json birkhoff_to_json(const BirkhoffFactorization& f);

Json central_element_to_json(const CentralElement& x);
CentralElement central_element_from_json(const Json& j);

Json cohomology_to_json(const CohomologyResult& r);

} // namespace loom
