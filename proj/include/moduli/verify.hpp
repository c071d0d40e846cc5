#pragma once

#include <string>
#include <vector>

namespace moduli::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

/// Property suites at CLI scale (seconds each). Suites: forms, counting,
/// modular, heights, section4; "all" runs every suite.
std::vector<SuiteResult> run_suite(const std::string& name);
const std::vector<std::string>& suite_names();

}  // namespace moduli::verify
