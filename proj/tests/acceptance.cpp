// Acceptance gate: runs every expectation suite and prints one verdict
// per numbered criterion.  Exits nonzero if any check fails, so this
// binary doubles as the ctest entry point for the whole-project run.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>

#include "osl/experiments.hpp"

int main(int argc, char** argv) {
  const int jobs = argc > 1 ? std::atoi(argv[1]) : 4;
  const auto rows = osl::run_suite("all", jobs, 1);

  std::map<int, std::pair<int, int>> tally;  // criterion -> {passed, total}
  for (const auto& r : rows) {
    auto& t = tally[r.criterion];
    ++t.second;
    if (r.pass) ++t.first;
  }

  bool all_ok = true;
  for (int c = 1; c <= 10; ++c) {
    const auto it = tally.find(c);
    const int passed = it == tally.end() ? 0 : it->second.first;
    const int total = it == tally.end() ? 0 : it->second.second;
    const bool ok = total > 0 && passed == total;
    all_ok = all_ok && ok;
    std::printf("criterion %2d: %s (%d/%d checks)\n", c,
                ok ? "PASS" : "FAIL", passed, total);
  }
  if (tally.count(0) != 0) {
    const auto [passed, total] = tally[0];
    const bool ok = passed == total;
    all_ok = all_ok && ok;
    std::printf("extras      : %s (%d/%d checks)\n", ok ? "PASS" : "FAIL",
                passed, total);
  }

  for (const auto& r : rows) {
    if (!r.pass) {
      std::printf("  FAIL %s/%s [%s]: %s, measured=%.17g, wanted %c %.17g\n",
                  r.suite.c_str(), r.name.c_str(), r.params.c_str(),
                  r.claim.c_str(), r.measured, r.bound, r.expected);
    }
  }
  return all_ok ? 0 : 1;
}
