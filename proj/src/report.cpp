#include "vfa/report.hpp"

#include <algorithm>

namespace vfa {

Report::Check& Report::get(const std::string& name) {
  for (auto& c : checks_)
    if (c.name == name) return c;
  checks_.push_back(Check{name});
  return checks_.back();
}

void Report::tally(const std::string& name, bool ok, const std::function<Json()>& counterexample) {
  auto& c = get(name);
  if (ok) {
    ++c.passed;
    return;
  }
  if (c.failed++ == 0 && counterexample) c.detail["first_counterexample"] = counterexample();
}

void Report::record(const std::string& name, bool ok, Json detail) {
  auto& c = get(name);
  ok ? ++c.passed : ++c.failed;
  for (auto& [k, v] : detail.items()) c.detail[k] = v;
}

void Report::declare(const std::string& name) { get(name); }

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& o : other.checks_) {
    auto& c = get(prefix + o.name);
    c.passed += o.passed;
    c.failed += o.failed;
    for (auto& [k, v] : o.detail.items())
      if (!c.detail.contains(k)) c.detail[k] = v;
  }
}

const Report::Check* Report::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::all_passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass(); });
}

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks_) n += c.failed;
  return n;
}

Json Report::to_json() const {
  Json out = Json::array();
  for (const auto& c : checks_) {
    Json detail = {{"passed", c.passed}, {"failed", c.failed}};
    for (auto& [k, v] : c.detail.items()) detail[k] = v;
    out.push_back({{"name", c.name}, {"status", c.pass() ? "pass" : "fail"}, {"detail", detail}});
  }
  return out;
}

}  // namespace vfa
