#pragma once

// (T, B) grid sweeps at fixed alpha, written as CSV.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qet/xy_model.hpp"

namespace qet::sweep {

enum class Quantity { kExtract, kNegativity, kConcurrence, kDiscord, kThetaOpt, kDeltaInf };

std::string_view to_string(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view name);
/// All quantity names, in canonical order.
std::vector<std::string_view> quantity_names();

/// Invalid sweep input. `flag()` names the command-line flag at fault.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string flag, const std::string& message);
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

inline constexpr int kMinSteps = 2;
inline constexpr int kMaxSteps = 10000;

struct SweepConfig {
  double alpha = 1.0;
  double t_min = 0.05;
  double t_max = 2.0;
  int t_steps = 50;
  double b_min = 0.05;
  double b_max = 2.0;
  int b_steps = 50;
  std::vector<Quantity> quantities{Quantity::kExtract};
  std::string output_path;

  /// Throws ConfigError naming the offending flag.
  void validate() const;

  double t_at(int i) const;
  double b_at(int j) const;
};

struct SweepRow {
  double t;
  double b;
  std::vector<double> values;  ///< one per requested quantity
};

/// Values of the requested quantities at one grid point.
std::vector<double> evaluate_point(const ModelParams& params, const std::vector<Quantity>& quantities);

/// Rows in T-major order. Points are spread over `jobs` threads (0 means the
/// hardware concurrency); the result order does not depend on `jobs`.
std::vector<SweepRow> run(const SweepConfig& config, unsigned jobs = 0);

/// 17 significant digits, printf %.17g style; negative zero prints as 0.
std::string format_value(double v);

void write_csv(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows);

/// Writes to config.output_path; throws ConfigError("--out", ...) when the
/// file cannot be written.
void write_csv_file(const SweepConfig& config, const std::vector<SweepRow>& rows);

}  // namespace qet::sweep
