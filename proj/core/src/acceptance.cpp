#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qet/closedform.hpp"
#include "qet/correlations.hpp"
#include "qet/protocol.hpp"
#include "qet/verify.hpp"
#include "verify_support.hpp"

namespace qet::verify {

using detail::linspace;
using detail::params;
using detail::Rng;
using detail::Stopwatch;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::array<double, 3> kAlphas{0.6, 0.8, 1.0};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double round_to(double v, int digits) {
  const double s = std::pow(10.0, digits);
  return std::round(v * s) / s;
}

TelCurve thermal_curve(const ModelParams& p) {
  ModelParams h = p;
  h.epsilon = 0.0;
  return TelCurve(thermal_state(p), alice_sx_measurement(), build_hamiltonian(h));
}

// ---------------------------------------------------------------------------

void critical_temperatures(Recorder& r) {
  constexpr std::array<double, 3> kFourDigits{0.6808, 0.9077, 1.1346};
  constexpr std::array<double, 3> kPublished{0.68, 0.9, 1.13};
  constexpr std::array<int, 3> kPublishedDigits{2, 1, 2};

  double four = 0.0;
  int misrounded = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double tc = critical_temperature(kAlphas[k]);
    four = std::max(four, std::abs(tc - kFourDigits[k]));
    if (round_to(tc, kPublishedDigits[k]) != kPublished[k]) ++misrounded;
  }
  r.check("tc_values", "T_c(0.6, 0.8, 1.0) = 0.6808, 0.9077, 1.1346", four, 5e-5);
  r.count("tc_published_rounding", "T_c rounds to 0.68, 0.9, 1.13", misrounded);

  Stopwatch clock;
  constexpr int kSteps = 100;
  constexpr double kTLo = 0.05, kTHi = 2.0;
  const double step = (kTHi - kTLo) / (kSteps - 1);
  int misplaced = 0;
  double worst_boundary = 0.0;
  for (double alpha : kAlphas) {
    const double tc = critical_temperature(alpha);
    double last_n = 0.0, last_c = 0.0;  // largest T with N > 0 / C > 0
    double first_zero_n = INFINITY, first_zero_c = INFINITY;
    for (int i = 0; i < kSteps; ++i) {
      const double t = linspace(kTLo, kTHi, kSteps, i);
      const DensityMatrix rho = thermal_state(params(0.3, alpha, t));
      const bool n = negativity(rho).negativity > 0.0;
      const bool c = concurrence(rho) > 0.0;
      // Away from the boundary by more than one grid step the sign is fixed.
      if (std::abs(t - tc) > step && (n != (t < tc) || c != (t < tc))) ++misplaced;
      if (n) last_n = t; else first_zero_n = std::min(first_zero_n, t);
      if (c) last_c = t; else first_zero_c = std::min(first_zero_c, t);
    }
    for (double edge : {0.5 * (last_n + first_zero_n), 0.5 * (last_c + first_zero_c)})
      worst_boundary = std::max(worst_boundary, std::abs(edge - tc));
  }
  r.count("scan_signs", "B = 0.3 scan: N, C > 0 below T_c and 0 above", misplaced);
  r.check("scan_boundary", "N and C boundary within one grid step of T_c", worst_boundary, step,
          fmt("grid step %.4f", step));
  r.check("runtime", "scan runtime (s)", clock.seconds(), 1.0);
}

void duality(Recorder& r) {
  Stopwatch clock;
  double tel = 0.0, inf = 0.0;
  for (double alpha : kAlphas) {
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const ModelParams p = params(linspace(0.05, 2.0, 20, j), alpha, linspace(0.05, 3.0, 20, i));
        const ProtocolTrace t = run_thermal_qet(p);
        const closedform::ClosedFormBundle c = closedform::evaluate(p);
        tel = std::max(tel, std::abs(t.delta_tel - (c.p - std::hypot(c.p, c.q))));
        inf = std::max(inf, std::abs(t.delta_inf - c.delta_inf));
      }
    }
  }
  r.check("delta_tel", "simulated delta_tel at theta0 vs p - sqrt(p^2 + q^2), 1200 points", tel, 1e-10);
  r.check("delta_inf", "simulated injected energy vs closed form, 1200 points", inf, 1e-10);
  r.check("runtime", "grid runtime (s)", clock.seconds(), 10.0);
}

void appendix_minimum(Recorder& r) {
  Rng rng(0xa3);
  double fd = 0.0;
  int nonpositive = 0, undercut = 0, not_negative = 0;
  for (int k = 0; k < 30; ++k) {
    const double alpha = rng.uniform(0.3, 1.5);
    double b = rng.uniform(0.05, 2.0);
    if (std::abs(b - alpha) < 1e-3) b += 0.01;
    const ModelParams p = params(b, alpha, rng.uniform(0.05, 3.0));
    const closedform::ClosedFormBundle c = closedform::evaluate(p);
    const AngleOptimum opt = optimal_angle(p);
    const double second = verify_minimum(p, opt.t0);
    fd = std::max(fd, std::abs(second - std::hypot(c.p, c.q)));
    if (!(second > 0.0)) ++nonpositive;

    const TelCurve curve = thermal_curve(p);
    const double f0 = curve.at_t(opt.t0);
    if (!(f0 < 0.0)) ++not_negative;
    for (int j = 0; j < 200; ++j)
      if (curve.at_t(rng.uniform(-kPi, kPi)) < f0 - 1e-12) ++undercut;
  }
  r.check("second_derivative", "finite-difference F''(t0) vs sqrt(p^2 + q^2), 30 points", fd, 1e-6);
  r.count("second_derivative_positive", "F''(t0) > 0", nonpositive);
  r.count("global_minimum", "F(t0) <= F(t) + 1e-12 for 200 random t per point", undercut);
  r.count("strictly_negative", "F(t0) < 0 whenever B != alpha", not_negative);
}

void appendix_axis(Recorder& r) {
  Rng rng(0xb8);
  double below = 0.0, above = 0.0, residual = 0.0, energy = 0.0, simplex = 0.0;
  for (int k = 0; k < 20; ++k) {
    const bool b_below = k < 10;
    const double alpha = rng.uniform(0.3, 1.5);
    const double b = b_below ? alpha * rng.uniform(0.1, 0.9) : alpha * rng.uniform(1.1, 2.5);
    const ModelParams p = params(b, alpha, rng.uniform(0.1, 2.0));
    const AxisOptimization opt = optimize_axis(p);
    const double target_y = b_below ? 1.0 : -1.0;
    const double dev = std::max({std::abs(opt.axis[0]), std::abs(opt.axis[1] - target_y), std::abs(opt.axis[2])});
    (b_below ? below : above) = std::max(b_below ? below : above, dev);
    simplex = std::max({simplex, std::abs(opt.simplex_axis[0]), std::abs(opt.simplex_axis[1] - target_y),
                        std::abs(opt.simplex_axis[2])});
    residual = std::max(residual, opt.record.max_residual());
    energy = std::max(energy, std::abs(opt.delta_tel - closedform::evaluate(p).delta_tel_min));
  }
  r.check("axis_b_below_alpha", "optimal axis (0, 1, 0) for 10 points with B < alpha", below, 1e-6);
  r.check("axis_b_above_alpha", "optimal axis (0, -1, 0) for 10 points with B > alpha", above, 1e-6);
  r.check("simplex_stage", "grid + Nelder-Mead axis before the exact polish", simplex, 1e-4);
  r.check("lagrange_residuals", "stationarity and constraint residuals at each optimum", residual, 1e-9);
  r.check("optimum_value", "optimized delta_tel equals p - sqrt(p^2 + q^2)", energy, 1e-10);
}

void excited_state(Recorder& r) {
  Rng rng(0xe4);
  double alice = 0.0, bob = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ModelParams p = params(rng.uniform(0.0, 2.0), rng.uniform(0.2, 2.0), 1.0);
    const ProtocolTrace t = run_excited_qet(p);
    alice = std::max(alice, std::abs(t.delta_inf + p.alpha / 2.0));
    bob = std::max(bob, std::abs(t.delta_extract - (p.alpha + std::hypot(p.alpha, p.b)) / 2.0));
  }
  r.check("alice_stage", "measurement-stage energy change equals -alpha/2", alice, 1e-12);
  r.check("extraction", "extraction equals (alpha + sqrt(alpha^2 + B^2))/2", bob, 1e-10);
}

void product_state(Recorder& r) {
  Rng rng(0x9ee);
  double split = 0.0, curve_err = 0.0, extract = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double alpha = rng.uniform(0.2, 1.5);
    const double b = alpha * rng.uniform(1.05, 3.0);
    const ModelParams p = params(b, alpha, 1.0);
    const QeeRun run = run_product_qee(p);
    split = std::max({split, std::abs(run.breakdown.e_site_a - b / 2.0), std::abs(run.breakdown.e_site_b),
                      std::abs(run.breakdown.e_interaction)});
    const TelCurve curve(DensityMatrix::pure(level_state(LevelLabel::k00)), alice_sx_measurement(),
                         qee_site_split(p).total());
    for (int j = 0; j < 50; ++j) {
      const double theta = linspace(-kPi / 2.0, kPi / 2.0, 50, j);
      curve_err = std::max(curve_err, std::abs(curve.delta_tel(theta) - closedform::qee_tel_curve(b, alpha, theta)));
    }
    extract = std::max(extract, std::abs(run.trace.delta_extract - (std::hypot(b, alpha) - b) / 2.0));
  }
  r.check("site_breakdown", "post-measurement (site A, site B, interaction) = (B/2, 0, 0)", split, 1e-12);
  r.check("curve", "delta_tel(theta) = (B/2)(1 - cos 2theta) + (alpha/2) sin 2theta at 50 angles", curve_err, 1e-12);
  r.check("extraction", "extraction equals (sqrt(B^2 + alpha^2) - B)/2", extract, 1e-10);
}

void limits(Recorder& r) {
  double ground = 0.0;
  for (auto [b, alpha] : {std::pair{0.5, 1.0}, {0.3, 0.6}, {0.1, 0.8}, {0.7, 0.8}}) {
    const double e = run_thermal_qet(params(b, alpha, 1e-3)).delta_extract;
    ground = std::max(ground, std::abs(e - (std::hypot(alpha, b) - alpha) / 2.0));
  }
  r.check("ground_limit", "T = 1e-3, B < alpha: extraction vs (sqrt(alpha^2 + B^2) - alpha)/2", ground, 1e-4);

  double tie = 0.0, zero_field = 0.0, hot = 0.0;
  for (double alpha : kAlphas) {
    for (double t : {0.05, 0.3, 1.0, 3.0}) {
      tie = std::max(tie, run_thermal_qet(params(alpha, alpha, t)).delta_extract);
      zero_field = std::max(zero_field, run_thermal_qet(params(0.0, alpha, t)).delta_extract);
    }
    for (double b : {0.3, 1.0, 2.0}) hot = std::max(hot, run_thermal_qet(params(b, alpha, 1e6)).delta_extract);
  }
  r.check("b_equals_alpha", "extraction at B = alpha", tie, 1e-12);
  r.check("zero_field", "extraction at B = 0", zero_field, 1e-12);
  r.check("high_temperature", "extraction at T = 1e6", hot, 1e-5);
}

void discord(Recorder& r) {
  Stopwatch clock;
  double agree = 0.0;
  for (double alpha : kAlphas) {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const ModelParams p = params(linspace(0.05, 2.0, 10, j), alpha, linspace(0.05, 3.0, 10, i));
        agree = std::max(agree, std::abs(discord_xstate(p).discord - discord_numeric(thermal_state(p))));
      }
    }
  }
  const double seconds = clock.seconds();

  Rng rng(0xd15c);
  double post = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ModelParams p = params(rng.uniform(0.05, 2.0), rng.uniform(0.3, 1.5), rng.uniform(0.05, 3.0));
    post = std::max(post, discord_numeric(post_measurement_state(thermal_state(p))));
  }
  r.check("forms_agree", "closed-form vs numeric discord, 10x10 grid per alpha (bits)", agree, 1e-5);
  r.check("post_measurement", "discord after Alice's measurement, 10 thermal points (bits)", post, 1e-7);
  r.check("runtime", "minimizer grid runtime (s)", seconds, 60.0);
}

void region(Recorder& r) {
  // The discord of the thermal state above T_c only drops below 1e-6 at large
  // fields, so B extends well past the figure range.
  constexpr int kSteps = 100;
  constexpr double kTLo = 0.05, kTHi = 3.0, kBLo = 0.05, kBHi = 30.0;
  for (double alpha : kAlphas) {
    const double tc = critical_temperature(alpha);
    int found = 0;
    double wt = 0.0, wb = 0.0, wd = 0.0, we = 0.0;
    for (int i = 0; i < kSteps; ++i) {
      const double t = linspace(kTLo, kTHi, kSteps, i);
      if (!(t > tc)) continue;
      for (int j = 0; j < kSteps; ++j) {
        const ModelParams p = params(linspace(kBLo, kBHi, kSteps, j), alpha, t);
        const double d = discord_xstate(p).discord;
        if (!(d < 1e-6)) continue;
        const double e = run_thermal_qet(p).delta_extract;
        if (!(e > 1e-6)) continue;
        if (found++ == 0) {
          wt = t;
          wb = p.b;
          wd = d;
          we = e;
        }
      }
    }
    std::string detail = std::to_string(found) + " points";
    if (found > 0) {
      detail += fmt(", e.g. T=%.4g B=%.4g", wt, wb) + fmt(" discord=%.3g extract=%.3g", wd, we);
      // Independent confirmation of the witness with the numeric minimizer.
      const double dn = discord_numeric(thermal_state(params(wb, alpha, wt)));
      detail += fmt(" numeric discord=%.3g", dn);
      if (!(dn < 1e-6)) found = 0;
    }
    char id[32];
    std::snprintf(id, sizeof id, "alpha_%.1f", alpha);
    r.expect(id, fmt("T > T_c, discord < 1e-6, extraction > 1e-6 at some point (alpha = %.1f)", alpha), found > 0,
             detail);
  }
}

struct CriterionEntry {
  const char* title;
  void (*run)(Recorder&);
};

constexpr CriterionEntry kCriteria[kCriterionCount] = {
    {"critical temperatures and entanglement boundary", critical_temperatures},
    {"closed-form vs simulated energies on the (T, B, alpha) grid", duality},
    {"optimal angle is a strict minimum", appendix_minimum},
    {"general-axis optimization", appendix_axis},
    {"excited-state protocol", excited_state},
    {"product ground state protocol", product_state},
    {"temperature and field limits", limits},
    {"quantum discord", discord},
    {"extraction without entanglement or discord", region},
};

}  // namespace

CriterionResult run_criterion(int number, const Options& options) {
  if (number < 1 || number > kCriterionCount) throw std::invalid_argument("no acceptance criterion " + std::to_string(number));
  const CriterionEntry& entry = kCriteria[number - 1];
  CriterionResult out{number, entry.title, {}, 0.0};
  Recorder r("acceptance." + std::to_string(number), options, out.checks);
  Stopwatch clock;
  entry.run(r);
  out.seconds = clock.seconds();
  for (CheckResult& c : out.checks) c.module = "acceptance";
  return out;
}

std::vector<CriterionResult> run_acceptance(const Options& options) {
  std::vector<CriterionResult> out;
  for (int n = 1; n <= kCriterionCount; ++n) out.push_back(run_criterion(n, options));
  return out;
}

}  // namespace qet::verify
