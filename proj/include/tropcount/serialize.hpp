#pragma once

// JSON readers and writers. Every document carries "schema": "tropcount/1";
// rationals are "p/q" strings, cones inside types are lists of ray vectors.

#include "tropcount/counting.hpp"

#include <json.hpp>

#include <string>

namespace tropcount {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tropcount/1";

Json to_json(const Fan& fan);
Fan fan_from_json(const Json& j);

Json to_json(const TropicalCurve& curve);
TropicalCurve curve_from_json(const Json& j);

Json to_json(const DiscreteData& gamma);
/// Accepts {"contacts": [[..],..] or [{"label", "contact"},..], "trivial": count or labels}.
DiscreteData gamma_from_json(const Fan& fan, const Json& j);

Json to_json(const Fan& fan, const CombinatorialType& type);
CombinatorialType type_from_json(const Fan& fan, const Json& j);

/// Includes the fan, so a map document is self-contained.
Json to_json(const Fan& fan, const TropicalStableMap& f);
TropicalStableMap map_from_json(const Fan& fan, const Json& j);

Json to_json(const ConeComplex& complex);
/// Rebuilds the moduli cones from the stored types and checks their dimensions.
ConeComplex complex_from_json(const Json& j);

Json to_json(const EmbeddedFan& embedded);

Json to_json(const CountProblem& problem, const CountResult& result);

struct CountDocument {
  CountProblem problem;
  CountResult result;
};

CountDocument count_from_json(const Json& j);

Json to_json(const ValidationReport& report);

std::string dump(const Json& j);

}  // namespace tropcount
