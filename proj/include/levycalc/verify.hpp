#pragma once

#include <functional>
#include <string>
#include <vector>

// Named property checks, grouped into the suites the CLI exposes
// (special | transform | inverse | mc | hyperbolic). Checks carrying an
// acceptance number form the acceptance gate; the rest are module
// invariants. Every tolerance is pinned here.

namespace levycalc::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Check {
  std::string name;
  int criterion = 0;  // 0 = module invariant, 1..9 = acceptance criterion
  std::function<CheckResult()> run;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;
};

const std::vector<Suite>& allSuites();

// Runs one suite by name ("all" runs every suite in order).
std::vector<CheckResult> runSuite(const std::string& name);

// Runs exactly the acceptance-numbered checks, ordered by criterion.
std::vector<std::pair<int, CheckResult>> runAcceptance();

}  // namespace levycalc::verify
