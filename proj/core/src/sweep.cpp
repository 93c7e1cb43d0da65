#include "qet/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "qet/correlations.hpp"
#include "qet/protocol.hpp"

namespace qet::sweep {

namespace {

constexpr std::array<std::string_view, 6> kNames{"extract", "negativity", "concurrence",
                                                 "discord", "theta_opt",  "delta_inf"};

bool finite(double v) { return std::isfinite(v); }

}  // namespace

std::string_view to_string(Quantity q) { return kNames[static_cast<std::size_t>(q)]; }

std::optional<Quantity> parse_quantity(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<Quantity>(i);
  return std::nullopt;
}

std::vector<std::string_view> quantity_names() { return {kNames.begin(), kNames.end()}; }

ConfigError::ConfigError(std::string flag, const std::string& message)
    : std::invalid_argument(flag + ": " + message), flag_(std::move(flag)) {}

void SweepConfig::validate() const {
  if (!finite(alpha) || alpha <= 0.0) throw ConfigError("--alpha", "must be a finite value > 0");
  if (!finite(t_min) || t_min <= 0.0) throw ConfigError("--t-min", "must be a finite value > 0");
  if (!finite(t_max) || t_max <= t_min) throw ConfigError("--t-max", "must be finite and greater than --t-min");
  if (t_steps < kMinSteps || t_steps > kMaxSteps) throw ConfigError("--t-steps", "must lie in [2, 10000]");
  if (!finite(b_min) || b_min < 0.0) throw ConfigError("--b-min", "must be a finite value >= 0");
  if (!finite(b_max) || b_max <= b_min) throw ConfigError("--b-max", "must be finite and greater than --b-min");
  if (b_steps < kMinSteps || b_steps > kMaxSteps) throw ConfigError("--b-steps", "must lie in [2, 10000]");
  if (quantities.empty()) throw ConfigError("--quantity", "at least one quantity is required");
}

double SweepConfig::t_at(int i) const {
  if (i == t_steps - 1) return t_max;
  return t_min + (t_max - t_min) * i / (t_steps - 1);
}

double SweepConfig::b_at(int j) const {
  if (j == b_steps - 1) return b_max;
  return b_min + (b_max - b_min) * j / (b_steps - 1);
}

std::vector<double> evaluate_point(const ModelParams& params, const std::vector<Quantity>& quantities) {
  std::optional<ProtocolTrace> trace;
  std::optional<DensityMatrix> rho;
  auto protocol = [&]() -> const ProtocolTrace& {
    if (!trace) trace = run_thermal_qet(params);
    return *trace;
  };
  auto state = [&]() -> const DensityMatrix& {
    if (!rho) rho = thermal_state(params);
    return *rho;
  };

  std::vector<double> out;
  out.reserve(quantities.size());
  for (Quantity q : quantities) {
    switch (q) {
      case Quantity::kExtract: out.push_back(protocol().delta_extract); break;
      case Quantity::kThetaOpt: out.push_back(protocol().theta_opt); break;
      case Quantity::kDeltaInf: out.push_back(protocol().delta_inf); break;
      case Quantity::kNegativity: out.push_back(negativity(state()).negativity); break;
      case Quantity::kConcurrence: out.push_back(concurrence(state())); break;
      case Quantity::kDiscord: out.push_back(discord_xstate(params).discord); break;
    }
  }
  return out;
}

std::vector<SweepRow> run(const SweepConfig& config, unsigned jobs) {
  config.validate();
  const std::size_t nb = static_cast<std::size_t>(config.b_steps);
  const std::size_t total = static_cast<std::size_t>(config.t_steps) * nb;
  std::vector<SweepRow> rows(total);

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      try {
        const int i = static_cast<int>(k / nb);
        const int j = static_cast<int>(k % nb);
        ModelParams p;
        p.alpha = config.alpha;
        p.b = config.b_at(j);
        p.temperature = config.t_at(i);
        rows[k] = SweepRow{p.temperature, p.b, evaluate_point(p, config.quantities)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_value(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows) {
  out << "T,B,alpha";
  for (Quantity q : config.quantities) out << ',' << to_string(q);
  out << '\n';
  const std::string alpha = format_value(config.alpha);
  for (const SweepRow& row : rows) {
    out << format_value(row.t) << ',' << format_value(row.b) << ',' << alpha;
    for (double v : row.values) out << ',' << format_value(v);
    out << '\n';
  }
}

void write_csv_file(const SweepConfig& config, const std::vector<SweepRow>& rows) {
  if (config.output_path.empty()) throw ConfigError("--out", "an output path is required");
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("--out", "cannot open '" + config.output_path + "' for writing");
  write_csv(file, config, rows);
  file.flush();
  if (!file) throw ConfigError("--out", "failed writing '" + config.output_path + "'");
}

}  // namespace qet::sweep
