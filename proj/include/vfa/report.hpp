#pragma once

#include "json.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace vfa {

using Json = nlohmann::ordered_json;

/// Ordered collection of named checks.  A check either holds a single
/// verdict or accumulates pass/fail counts over samples, keeping the first
/// counterexample.
class Report {
 public:
  struct Check {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    Json detail = Json::object();
    bool pass() const { return failed == 0; }
  };

  /// Count one sample for `name`.  `counterexample` is only evaluated for
  /// the first failure.
  void tally(const std::string& name, bool ok, const std::function<Json()>& counterexample = {});
  /// Single verdict.
  void record(const std::string& name, bool ok, Json detail = Json::object());
  /// Ensure a check exists even when no sample reached it.
  void declare(const std::string& name);
  void merge(const Report& other, const std::string& prefix = "");

  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  bool all_passed() const;
  std::size_t failures() const;

  /// [{name, status, detail}] with pass/fail counts folded into detail.
  Json to_json() const;

 private:
  Check& get(const std::string& name);
  std::vector<Check> checks_;
};

}  // namespace vfa
