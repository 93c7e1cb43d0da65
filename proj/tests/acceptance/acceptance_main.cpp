// Acceptance suite: one PASS/FAIL line per criterion. With -v, every
// sub-check residual follows its criterion. Exit status is nonzero if any
// criterion fails.
//
//   qetlab_acceptance [-v] [criterion...]

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "qet/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> which;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "-v")
      verbose = true;
    else
      which.push_back(std::atoi(argv[i]));
  }
  if (which.empty())
    for (int n = 1; n <= qet::verify::kCriterionCount; ++n) which.push_back(n);

  int failed = 0;
  for (int n : which) {
    qet::verify::CriterionResult r;
    try {
      r = qet::verify::run_criterion(n);
    } catch (const std::exception& e) {
      std::printf("criterion %d FAIL  error: %s\n", n, e.what());
      ++failed;
      continue;
    }
    const bool ok = r.passed();
    if (!ok) ++failed;

    // Headline: the sub-check closest to its tolerance.
    const qet::verify::CheckResult* worst = nullptr;
    double worst_ratio = -1.0;
    for (const auto& c : r.checks) {
      const double ratio = c.tolerance > 0.0 ? c.measured / c.tolerance : (c.passed ? 0.0 : 1e300);
      if (!c.passed || ratio > worst_ratio) {
        worst_ratio = c.passed ? ratio : 1e300;
        worst = &c;
        if (!c.passed) break;
      }
    }
    std::printf("criterion %d %s  %-52s %6.2fs", n, ok ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    if (worst) std::printf("  [%s %.3e / %.3e]", worst->id.c_str(), worst->measured, worst->tolerance);
    std::printf("\n");
    if (verbose)
      for (const auto& c : r.checks) std::printf("    %s\n", qet::verify::format_check(c).c_str());
  }
  std::printf("%zu criteria, %d failed\n", which.size(), failed);
  return failed == 0 ? 0 : 1;
}
