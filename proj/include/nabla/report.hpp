#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nabla {

// One verdict of a verification routine.  `id` is a short stable slug used in
// CLI output lines of the form "CHECK <id> PASS|FAIL <detail>".
struct Check {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  void add(std::string id, bool pass, std::string detail = {}) {
    checks.push_back({std::move(id), pass, std::move(detail)});
  }
  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  std::string summary() const {
    std::size_t passed = 0;
    for (const auto& c : checks)
      if (c.pass) ++passed;
    return std::to_string(passed) + "/" + std::to_string(checks.size()) + " checks passed";
  }
};

// Prints "CHECK <id> PASS|FAIL <detail>" lines; returns report.ok().
bool print_report(const Report& report, std::ostream& os);

}  // namespace nabla
