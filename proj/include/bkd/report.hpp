// Pass/fail results shared by the verification routines.
#pragma once

#include <string>
#include <vector>

namespace bkd {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;  // witness on failure, summary on success
};

struct DualityReport {
  std::string title;
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  void merge(const DualityReport& o) {
    for (const auto& c : o.checks) checks.push_back({o.title.empty() ? c.name : o.title + ": " + c.name, c.pass, c.detail});
  }
};

}  // namespace bkd
