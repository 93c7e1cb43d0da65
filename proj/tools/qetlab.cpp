// qetlab: sweeps, single protocol runs, and the self-verification suite.
//
// Exit codes: 0 success, 1 a verification check failed, 2 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qet/protocol.hpp"
#include "qet/sweep.hpp"
#include "qet/verify.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return kExitUsage;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  qet::sweep::SweepConfig config;
  std::vector<std::string> quantities{"extract"};
  unsigned jobs = 0;
};

int run_sweep(SweepArgs& args) {
  auto& cfg = args.config;
  cfg.quantities.clear();
  for (const std::string& name : args.quantities) {
    const auto q = qet::sweep::parse_quantity(name);
    if (!q) {
      std::string valid;
      for (auto n : qet::sweep::quantity_names()) valid += (valid.empty() ? "" : ", ") + std::string(n);
      return usage_error("--quantity: unknown quantity '" + name + "' (expected one of " + valid + ")");
    }
    cfg.quantities.push_back(*q);
  }
  try {
    cfg.validate();
    if (cfg.output_path.empty()) throw qet::sweep::ConfigError("--out", "an output path is required");
    {
      // Fail before computing anything if the destination is not writable.
      std::ofstream probe(cfg.output_path, std::ios::app);
      if (!probe) throw qet::sweep::ConfigError("--out", "cannot open '" + cfg.output_path + "' for writing");
    }
    const auto rows = qet::sweep::run(cfg, args.jobs);
    qet::sweep::write_csv_file(cfg, rows);
    std::cerr << "wrote " << rows.size() << " rows to " << cfg.output_path << '\n';
  } catch (const qet::sweep::ConfigError& e) {
    return usage_error(e.what());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// protocol

struct ProtocolArgs {
  std::string mode = "thermal";
  qet::ModelParams params;
};

void print_kv(const char* key, double value) {
  std::cout << key << '=' << qet::sweep::format_value(value) << '\n';
}

void print_trace(const qet::ProtocolTrace& t) {
  print_kv("e_initial", t.e_initial);
  print_kv("e_after_measurement", t.e_after_measurement);
  print_kv("e_after_locc", t.e_after_locc);
  print_kv("alice_stage", t.delta_inf);
  print_kv("delta_inf", t.delta_inf);
  print_kv("delta_tel", t.delta_tel);
  print_kv("extract", t.delta_extract);
  print_kv("theta_opt", t.theta_opt);
  print_kv("t0", t.t0);
  print_kv("p", t.p);
  print_kv("q", t.q);
  print_kv("l", t.l);
  print_kv("m", t.m);
}

int run_protocol(const ProtocolArgs& args) {
  const qet::ModelParams& p = args.params;
  try {
    if (args.mode == "thermal") {
      p.validate();
      const qet::ProtocolTrace t = qet::run_thermal_qet(p);
      std::cout << "mode=" << args.mode << '\n';
      print_kv("b", p.b);
      print_kv("alpha", p.alpha);
      print_kv("temperature", p.temperature);
      print_trace(t);
    } else if (args.mode == "excited") {
      p.validate_couplings();
      std::cout << "mode=" << args.mode << '\n';
      print_kv("b", p.b);
      print_kv("alpha", p.alpha);
      print_trace(qet::run_excited_qet(p));
    } else {
      const qet::QeeRun run = qet::run_product_qee(p);
      std::cout << "mode=" << args.mode << '\n';
      print_kv("b", p.b);
      print_kv("alpha", p.alpha);
      print_trace(run.trace);
      print_kv("site_A", run.breakdown.e_site_a);
      print_kv("site_B", run.breakdown.e_site_b);
      print_kv("interaction", run.breakdown.e_interaction);
    }
  } catch (const qet::AssumptionViolation& e) {
    return usage_error(std::string("--mode qee needs B > alpha (the product ground state |00> assumption): ") +
                       e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  double tolerance_scale = 1.0;
  bool skip_acceptance = false;
};

int run_verify(const VerifyArgs& args) {
  const qet::verify::Options options{args.tolerance_scale};
  std::map<std::string, std::pair<int, int>> counts;  // module -> (passed, failed)
  std::vector<std::string> order;
  auto tally = [&](const qet::verify::CheckResult& c) {
    std::cout << qet::verify::format_check(c) << '\n';
    if (!counts.count(c.module)) order.push_back(c.module);
    auto& [pass, fail] = counts[c.module];
    (c.passed ? pass : fail) += 1;
  };

  for (auto module : qet::verify::module_names())
    for (const auto& c : qet::verify::run_module(module, options)) tally(c);

  if (!args.skip_acceptance) {
    for (int n = 1; n <= qet::verify::kCriterionCount; ++n) {
      const auto criterion = qet::verify::run_criterion(n, options);
      for (const auto& c : criterion.checks) tally(c);
    }
  }

  int failed = 0;
  std::cout << "\nsummary\n";
  for (const std::string& module : order) {
    const auto [pass, fail] = counts[module];
    failed += fail;
    std::printf("  %-14s %3d passed %3d failed\n", module.c_str(), pass, fail);
  }
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return failed == 0 ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum energy teleportation on the two-qubit XY model"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto& cfg = sweep_args.config;
  auto* sweep = app.add_subcommand("sweep", "Evaluate quantities on a (T, B) grid and write CSV");
  sweep->add_option("--alpha", cfg.alpha, "Coupling alpha")->capture_default_str();
  sweep->add_option("--t-min", cfg.t_min, "Lowest temperature")->capture_default_str();
  sweep->add_option("--t-max", cfg.t_max, "Highest temperature")->capture_default_str();
  sweep->add_option("--t-steps", cfg.t_steps, "Temperature grid points")->capture_default_str();
  sweep->add_option("--b-min", cfg.b_min, "Lowest field")->capture_default_str();
  sweep->add_option("--b-max", cfg.b_max, "Highest field")->capture_default_str();
  sweep->add_option("--b-steps", cfg.b_steps, "Field grid points")->capture_default_str();
  sweep->add_option("--quantity", sweep_args.quantities,
                    "extract, negativity, concurrence, discord, theta_opt, delta_inf (comma list or repeated)")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--out", cfg.output_path, "Output CSV path")->required();
  sweep->add_option("--jobs", sweep_args.jobs, "Worker threads (0 = all cores)")->capture_default_str();

  ProtocolArgs protocol_args;
  auto* protocol = app.add_subcommand("protocol", "Run one protocol and print key=value lines");
  protocol->add_option("--mode", protocol_args.mode, "thermal, excited or qee")
      ->check(CLI::IsMember({"thermal", "excited", "qee"}))
      ->capture_default_str();
  protocol->add_option("--b", protocol_args.params.b, "Magnetic field B")->capture_default_str();
  protocol->add_option("--alpha", protocol_args.params.alpha, "Coupling alpha")->capture_default_str();
  protocol->add_option("--temp", protocol_args.params.temperature, "Temperature (thermal mode)")
      ->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run every invariant check and acceptance criterion");
  verify->add_option("--tol-scale", verify_args.tolerance_scale, "Multiply every tolerance (0 forces failure)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_flag("--skip-acceptance", verify_args.skip_acceptance, "Only run the module invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*sweep) return run_sweep(sweep_args);
  if (*protocol) return run_protocol(protocol_args);
  return run_verify(verify_args);
}
