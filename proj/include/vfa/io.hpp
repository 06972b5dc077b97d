#pragma once

#include "vfa/factalg.hpp"
#include "vfa/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>

namespace vfa {

// JSON forms:
//   presentation  {"generators": ["x", "y"], "relations": ["x*y"], "max_weight": 6}
//   disk          {"c": ["re", "im"], "r": "p/q" | "inf"}
//   basis element [disk, ...]
//   supported open {"regions": [[disk, ...], ...]}

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);
Scalar scalar_from_json(const Json& j);
Json scalar_to_json(const Scalar& z);

PresentationPtr presentation_from_json(const Json& j, std::optional<Weight> max_weight = std::nullopt);
Json presentation_to_json(const AlgebraPresentation& P);

/// "jet-x" (C[x]) and "jet-xy" (C[x,y]/(xy)); nullptr for other names.
PresentationPtr builtin_presentation(const std::string& name, Weight max_weight);
std::vector<std::string> builtin_presentation_names();

Disk disk_from_json(const Json& j);
Json disk_to_json(const Disk& d);
BasisElement basis_from_json(const Json& j);
Json basis_to_json(const BasisElement& L);
SupportedOpen open_from_json(const Json& j);

using GeometryObject = std::variant<BasisElement, SupportedOpen>;

/// {"presentation": <presentation or builtin name>, "max_weight": W,
///  "geometry": {name: basis element | supported open},
///  "commands": [{"command": "fact check", "seed": 1, ...}]}
struct Scenario {
  Json presentation_json;
  PresentationPtr presentation;
  Weight max_weight = 0;
  std::map<std::string, GeometryObject> geometry;
  std::vector<Json> commands;
};

Scenario scenario_from_json(const Json& j);

}  // namespace vfa
