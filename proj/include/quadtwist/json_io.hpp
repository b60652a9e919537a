#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "quadtwist/galois.hpp"
#include "quadtwist/polymap.hpp"
#include "quadtwist/prop1.hpp"

namespace quadtwist {

using OrderedJson = nlohmann::ordered_json;

/// Map format: variable table with kind/partner flags, the domain variable
/// list, and one term list per component; a term is [exponent vector,
/// coefficient x, coefficient y] with both coefficients as canonical
/// rational strings. Round-trips exactly.
OrderedJson polymap_to_json(const PolyMap& f);
PolyMap polymap_from_json(const OrderedJson& j);

/// Reads a map file; validation errors name the offending field.
PolyMap load_map_file(const std::string& path);
void save_map_file(const PolyMap& f, const std::string& path);

OrderedJson kstructure_to_json(const KStructure& ks);
OrderedJson trace_to_json(const ProofTrace& trace);

}  // namespace quadtwist
