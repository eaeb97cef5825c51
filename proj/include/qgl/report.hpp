#pragma once

// Identity-check reports shared by the verification drivers: a named check,
// a pass flag, and a short witness (sparse lhs-rhs difference or a value).

#include <string>
#include <vector>

namespace qgl {

struct CheckResult {
  std::string id;
  bool ok = false;
  std::string detail;  // empty on success; sparse diff or message on failure
};

struct Report {
  std::vector<CheckResult> checks;

  void add(std::string id, bool ok, std::string detail = "") {
    checks.push_back({std::move(id), ok, std::move(detail)});
  }
  bool allOk() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.ok) ++n;
    return n;
  }
  void merge(const Report& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
  }
};

}  // namespace qgl
