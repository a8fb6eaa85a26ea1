// Acceptance criteria at full case counts. Prints one PASS/FAIL line per
// criterion; exits nonzero if any fails or overruns its time budget.

#include <algorithm>
#include <iostream>

#include "cli.hpp"
#include "wholo/testing/acceptance.hpp"

int main() {
  wholo::testing::AcceptanceOptions o;
  o.quick = false;
  o.seed = 0;
  o.cli = [](const std::vector<std::string>& a, std::ostream& out, std::ostream& err) {
    return wholo::cli::run_cli(a, out, err);
  };
  const auto results = wholo::testing::run_acceptance(o);
  wholo::testing::print_summary(std::cout, results, false);
  wholo::testing::print_timings(std::cout, results);
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; }) ? 0 : 1;
}
