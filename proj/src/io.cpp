#include "vfa/io.hpp"

namespace vfa {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw Error("complex literal needs [re, im], got " + j.dump());
    return Scalar(rational_from_json(j[0]), rational_from_json(j[1]));
  }
  return Scalar(rational_from_json(j));
}

Json scalar_to_json(const Scalar& z) { return Json::array({to_string(z.re()), to_string(z.im())}); }

PresentationPtr presentation_from_json(const Json& j, std::optional<Weight> max_weight) {
  if (j.is_string()) {
    if (!max_weight) throw Error("builtin presentation needs a max weight");
    auto P = builtin_presentation(j.get<std::string>(), *max_weight);
    if (!P) throw Error("unknown presentation \"" + j.get<std::string>() + "\"");
    return P;
  }
  auto gens = field(j, "generators").get<std::vector<std::string>>();
  std::vector<std::string> rels;
  if (j.contains("relations")) rels = j.at("relations").get<std::vector<std::string>>();
  Weight W = max_weight ? *max_weight : field(j, "max_weight").get<Weight>();
  if (W < 0) throw Error("max_weight must be non-negative");
  return make_presentation(AlgebraPresentation::parse(std::move(gens), rels, W));
}

Json presentation_to_json(const AlgebraPresentation& P) {
  Json rels = Json::array();
  for (const auto& r : P.relations()) rels.push_back(P.str(r));
  return Json{{"generators", P.generators()}, {"relations", rels}, {"max_weight", P.max_weight()}};
}

PresentationPtr builtin_presentation(const std::string& name, Weight max_weight) {
  if (name == "jet-x") return make_presentation(AlgebraPresentation::free({"x"}, max_weight));
  if (name == "jet-y") return make_presentation(AlgebraPresentation::free({"y"}, max_weight));
  if (name == "jet-xy") return make_presentation(AlgebraPresentation::parse({"x", "y"}, {"x*y"}, max_weight));
  return nullptr;
}

std::vector<std::string> builtin_presentation_names() { return {"jet-x", "jet-y", "jet-xy"}; }

Disk disk_from_json(const Json& j) {
  Scalar c = scalar_from_json(field(j, "c"));
  const Json& r = field(j, "r");
  if (r.is_string() && r.get<std::string>() == "inf") return Disk(c, Radius::infinite());
  return Disk(c, Radius(rational_from_json(r)));
}

Json disk_to_json(const Disk& d) {
  return Json{{"c", scalar_to_json(d.center)},
              {"r", d.radius.is_infinite() ? Json("inf") : rational_to_json(d.radius.value())}};
}

BasisElement basis_from_json(const Json& j) {
  if (!j.is_array()) throw Error("basis element must be an array of disks");
  std::vector<Disk> disks;
  for (const auto& d : j) disks.push_back(disk_from_json(d));
  return BasisElement(std::move(disks));
}

Json basis_to_json(const BasisElement& L) {
  Json out = Json::array();
  for (const auto& d : L.disks()) out.push_back(disk_to_json(d));
  return out;
}

SupportedOpen open_from_json(const Json& j) {
  std::vector<DiskUnion> regions;
  for (const auto& region : field(j, "regions")) {
    DiskUnion u;
    for (const auto& d : region) u.push_back(disk_from_json(d));
    regions.push_back(std::move(u));
  }
  return SupportedOpen(std::move(regions));
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  s.max_weight = j.contains("max_weight") ? j.at("max_weight").get<Weight>() : 4;
  if (s.max_weight < 0) throw Error("scenario max_weight must be non-negative");
  s.presentation_json = field(j, "presentation");
  s.presentation = presentation_from_json(s.presentation_json, s.max_weight);
  if (j.contains("geometry")) {
    for (const auto& [name, obj] : j.at("geometry").items()) {
      if (obj.is_array())
        s.geometry.emplace(name, basis_from_json(obj));
      else
        s.geometry.emplace(name, open_from_json(obj));
    }
  }
  if (j.contains("commands"))
    for (const auto& c : j.at("commands")) {
      if (!c.contains("command")) throw Error("scenario command needs a \"command\" field");
      s.commands.push_back(c);
    }
  return s;
}

}  // namespace vfa
