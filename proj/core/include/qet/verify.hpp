#pragma once

// Self-check registry: per-module invariant suites and the acceptance
// criteria, each reported as measured residual vs tolerance.

#include <string>
#include <string_view>
#include <vector>

namespace qet::verify {

struct CheckResult {
  std::string id;
  std::string module;
  std::string description;
  double measured;   ///< worst residual (or violation count) observed
  double tolerance;  ///< already multiplied by the tolerance scale
  bool passed;       ///< measured < tolerance, strictly
  std::string detail;
};

struct Options {
  /// Multiplies every tolerance. 0 makes every check fail.
  double tolerance_scale = 1.0;
};

/// Collects checks for one module.
class Recorder {
 public:
  Recorder(std::string module, const Options& options, std::vector<CheckResult>& sink);

  /// Passes when measured < tolerance * scale. NaN always fails.
  bool check(std::string id, std::string description, double measured, double tolerance, std::string detail = {});
  /// Boolean condition recorded as a violation count (0 or 1) against 0.5.
  bool expect(std::string id, std::string description, bool ok, std::string detail = {});
  /// Violation count against 0.5.
  bool count(std::string id, std::string description, int violations, std::string detail = {});

 private:
  std::string module_;
  double scale_;
  std::vector<CheckResult>& sink_;
};

/// Module names in report order.
std::vector<std::string_view> module_names();

/// Invariant suite of one module (see module_names()). Throws
/// std::invalid_argument for an unknown module.
std::vector<CheckResult> run_module(std::string_view module, const Options& options = {});

/// All module suites, in module_names() order.
std::vector<CheckResult> run_module_checks(const Options& options = {});

struct CriterionResult {
  int number;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds;
  bool passed() const;
};

inline constexpr int kCriterionCount = 9;

/// Runs acceptance criterion `number` in [1, kCriterionCount].
CriterionResult run_criterion(int number, const Options& options = {});
std::vector<CriterionResult> run_acceptance(const Options& options = {});

/// One-line rendering: "PASS id  measured=... tol=...  description".
std::string format_check(const CheckResult& c);

}  // namespace qet::verify
