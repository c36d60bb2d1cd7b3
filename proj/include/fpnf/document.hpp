#pragma once

#include <string>

#include <json.hpp>

#include "fpnf/jet.hpp"
#include "fpnf/series.hpp"

namespace fpnf {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

// {"order": N, "terms": [{"c": "num/den", "e": [i, j, k]}, ...]}, terms in
// canonical order. Series with an exact valid order are written at `cap`.
Json series_to_json(const Series& s, int cap = kExactOrder);
// An ODE document: series_to_json plus "format_version".
Json ode_to_json(const Series& J, int cap = kExactOrder);
// Accepts unsorted terms, unreduced fractions and zero coefficients (which
// are dropped). Rejects duplicate exponents, terms above the order, unknown
// format versions and anything structurally wrong with MalformedDocument.
Series ode_from_json(const Json& doc);

Json map_to_json(const FibreMap& m, int cap = kExactOrder);
// Also validates the map (InvalidMap).
FibreMap map_from_json(const Json& doc);

// Compact form with keys in lexicographic order.
std::string dump_canonical(const Json& doc);
// Throws MalformedDocument on syntax errors.
Json parse_json(const std::string& text);

}  // namespace fpnf
