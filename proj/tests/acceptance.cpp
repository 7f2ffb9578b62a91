// Runs the numbered acceptance criteria and prints one PASS/FAIL line per
// criterion, followed by its individual checks.
//   acceptance            all criteria
//   acceptance 4 7 11     selected criteria
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "convexchain/validate.hpp"

int main(int argc, char** argv) {
  using namespace convexchain::validate;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) ids = *suite_members("all");

  Runner runner;
  int failed = 0;
  for (int id : ids) {
    CriterionResult r;
    try {
      r = runner.run(id);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "aborted";
      r.checks.push_back({"no exception", false, e.what()});
    }
    const bool ok = r.passed();
    failed += ok ? 0 : 1;
    std::printf("criterion %2d: %s  %s (%.1f s)\n", r.id, ok ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    for (const Check& c : r.checks) {
      std::printf("    %s  %s: %s\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.detail.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d passed, %d failed\n", ids.size(), static_cast<int>(ids.size()) - failed, failed);
  return failed == 0 ? 0 : 1;
}
