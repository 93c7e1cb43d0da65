#include "qet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "qet/closedform.hpp"
#include "qet/correlations.hpp"
#include "qet/protocol.hpp"
#include "qet/sweep.hpp"
#include "verify_support.hpp"

namespace qet::verify {

using detail::linspace;
using detail::params;
using detail::Rng;

Recorder::Recorder(std::string module, const Options& options, std::vector<CheckResult>& sink)
    : module_(std::move(module)), scale_(options.tolerance_scale), sink_(sink) {}

bool Recorder::check(std::string id, std::string description, double measured, double tolerance,
                     std::string detail) {
  const double tol = tolerance * scale_;
  const bool ok = measured < tol;
  sink_.push_back(CheckResult{module_ + "." + id, module_, std::move(description), measured, tol, ok,
                              std::move(detail)});
  return ok;
}

bool Recorder::expect(std::string id, std::string description, bool ok, std::string detail) {
  return count(std::move(id), std::move(description), ok ? 0 : 1, std::move(detail));
}

bool Recorder::count(std::string id, std::string description, int violations, std::string detail) {
  return check(std::move(id), std::move(description), violations, 0.5, std::move(detail));
}

std::string format_check(const CheckResult& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %-40s measured=%.3e tol=%.3e", c.passed ? "PASS" : "FAIL", c.id.c_str(),
                c.measured, c.tolerance);
  std::string line = buf;
  line += "  " + c.description;
  if (!c.detail.empty()) line += " [" + c.detail + "]";
  return line;
}

bool CriterionResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

constexpr double kPi = std::numbers::pi;

// Thermal grid shared by several suites.
template <class F>
void for_thermal_grid(int nt, int nb, F&& f) {
  for (double alpha : {0.6, 0.8, 1.0})
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nb; ++j) f(params(linspace(0.0, 2.0, nb, j), alpha, linspace(0.05, 3.0, nt, i)));
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).eigenvalues.front(); }

double state_defect(const DensityMatrix& rho) {
  return std::max(std::abs(rho.matrix().trace().real() - 1.0), std::max(0.0, -min_eigenvalue(rho.matrix())));
}

// ---------------------------------------------------------------------------

void qmatrix_suite(Recorder& r) {
  Rng rng(0x51a7);
  double trace_err = 0.0, recon_err = 0.0, ortho_err = 0.0, pt_err = 0.0, mixed_err = 0.0, involution = 0.0;
  for (int k = 0; k < 50; ++k) {
    for (std::size_t dim : {2u, 4u}) {
      const ComplexMatrix h = detail::random_hermitian(rng, dim);
      const HermitianSpectrum s = hermitian_eig(h);
      double sum = 0.0;
      for (double l : s.eigenvalues) sum += l;
      trace_err = std::max(trace_err, std::abs(sum - h.trace().real()));
      recon_err = std::max(recon_err, max_abs_diff(s.reconstruct(), h));
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          ortho_err = std::max(ortho_err, std::abs(inner(s.eigenvectors[i], s.eigenvectors[j]) - (i == j ? 1.0 : 0.0)));
    }
    const ComplexMatrix m = detail::random_matrix(rng, 4);
    pt_err = std::max(pt_err, max_abs_diff(partial_trace_B(partial_transpose_B(m)), partial_trace_B(m)));
    involution = std::max(involution, max_abs_diff(partial_transpose_B(partial_transpose_B(m)), m));

    const ComplexMatrix a = detail::random_matrix(rng, 2), b = detail::random_matrix(rng, 2);
    const ComplexMatrix c = detail::random_matrix(rng, 2), d = detail::random_matrix(rng, 2);
    mixed_err = std::max(mixed_err, max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)));
  }
  r.check("eig_trace", "sum of eigenvalues equals the trace (100 random Hermitian)", trace_err, 1e-12);
  r.check("eig_reconstruct", "V diag(l) V^dagger reproduces the input", recon_err, 1e-12);
  r.check("eig_orthonormal", "eigenvectors are orthonormal", ortho_err, 1e-12);
  r.check("ptrace_ptranspose", "tr_B of the B-partial transpose equals tr_B", pt_err, 1e-14);
  r.check("ptranspose_involution", "partial transpose is an involution", involution, 1e-15);
  r.check("kron_mixed_product", "(A x B)(C x D) = AC x BD on 2x2 factors", mixed_err, 1e-13);

  bool capped = false;
  try {
    (void)kron(ComplexMatrix::identity(4), identity2());
  } catch (const DimensionError&) {
    capped = true;
  }
  r.expect("kron_cap", "kron beyond 4x4 throws DimensionError", capped);

  bool rejected = false;
  try {
    (void)hermitian_eig(sigma_plus());
  } catch (const NotHermitianError&) {
    rejected = true;
  }
  r.expect("eig_rejects_non_hermitian", "hermitian_eig rejects a non-Hermitian input", rejected);

  // Fully degenerate spectrum at B = alpha: psi- and |00> tie.
  const ComplexMatrix h = build_hamiltonian(params(1.0, 1.0, 1.0));
  const HermitianSpectrum s = hermitian_eig(h);
  r.check("eig_degenerate", "reconstruction with a degenerate ground pair", max_abs_diff(s.reconstruct(), h), 1e-13);
}

// ---------------------------------------------------------------------------

void xy_model_suite(Recorder& r) {
  double weight_err = 0.0, energy_err = 0.0, level_err = 0.0, state_err = 0.0;
  for_thermal_grid(8, 8, [&](const ModelParams& p) {
    const SpectralData sd = spectral_data(p);
    const DensityMatrix rho = thermal_state(p);
    std::vector<double> ev = hermitian_eig(rho.matrix()).eigenvalues;
    std::vector<double> w(sd.thermal_weights.begin(), sd.thermal_weights.end());
    std::sort(w.begin(), w.end());
    for (std::size_t i = 0; i < 4; ++i) weight_err = std::max(weight_err, std::abs(ev[i] - w[i]));

    const ComplexMatrix h = build_hamiltonian(p);
    energy_err = std::max(energy_err, std::abs(rho.expectation(h) - closedform::evaluate(p).e_initial));
    for (const EnergyLevel& level : sd.levels) {
      const ComplexVector residual = h.apply(level.state) - Complex{level.energy, 0.0} * level.state;
      level_err = std::max(level_err, residual.norm());
    }
    state_err = std::max(state_err, state_defect(rho));
  });
  r.check("thermal_weights", "thermal_state spectrum equals the Boltzmann weights", weight_err, 1e-12);
  r.check("thermal_energy", "tr(H rho) equals -2(B sinh bB + a sinh ba)/Z", energy_err, 1e-12);
  r.check("level_table", "labelled levels are eigenvectors with the tabulated energies", level_err, 1e-12);
  r.check("thermal_valid", "thermal states have unit trace and no negative eigenvalue", state_err, 1e-12);

  const ComplexMatrix psi_minus = projector(level_state(LevelLabel::kMinus));
  double ground_err = 0.0;
  for (auto [b, alpha] : {std::pair{0.5, 1.0}, {0.3, 0.6}, {0.1, 0.8}})
    ground_err = std::max(ground_err, max_abs_diff(thermal_state(params(b, alpha, 1e-3)).matrix(), psi_minus));
  r.check("low_t_ground", "T = 1e-3, B < alpha: thermal state is psi-", ground_err, 1e-6);

  const SpectralData deg = spectral_data(params(0.8, 0.8, 1.0));
  r.expect("degenerate_flag", "B = alpha reports both ground labels and the degeneracy flag",
           deg.ground_degenerate && deg.ground_labels.size() == 2 && deg.regime == GroundRegime::kDegenerate);
  r.expect("regimes", "B < alpha entangled, B > alpha product",
           ground_regime(0.5, 1.0) == GroundRegime::kEntangled && ground_regime(1.5, 1.0) == GroundRegime::kProduct);

  const ModelParams cold = params(0.5, 1.0, 1e-4);
  const SpectralData sd = spectral_data(cold);
  r.expect("log_partition_finite", "ln Z stays finite at beta alpha = 1e4", std::isfinite(sd.log_partition_function));

  bool rejected = false;
  try {
    DensityMatrix bad(ComplexMatrix::diagonal({0.7, 0.7}));
  } catch (const InvalidDensityMatrix&) {
    rejected = true;
  }
  r.expect("density_validation", "a trace-1.4 matrix is rejected", rejected);
}

// ---------------------------------------------------------------------------

void protocol_suite(Recorder& r) {
  Rng rng(0x9e07);

  double stage_err = 0.0;
  for_thermal_grid(5, 5, [&](const ModelParams& p) {
    const ProtocolTrace t = run_thermal_qet(p);
    stage_err = std::max({stage_err, state_defect(t.rho_initial), state_defect(t.rho_after_measurement),
                          state_defect(t.rho_final)});
  });
  r.check("stage_states_valid", "every stage output is a density matrix", stage_err, 1e-12);

  bool measurement_ok = true;
  try {
    alice_sx_measurement().validate();
  } catch (const std::exception&) {
    measurement_ok = false;
  }
  r.expect("measurement_complete", "Alice's projectors are complete, Hermitian and idempotent", measurement_ok);

  double comm = 0.0;
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix a = detail::random_matrix(rng, 2), b = detail::random_matrix(rng, 2);
    comm = std::max(comm, commutator(on_A(a), on_B(b)).max_abs());
  }
  r.check("local_commutation", "[O x I, I x O'] = 0 for 50 random pairs", comm, 1e-13);

  double identity_err = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ModelParams p = params(rng.uniform(0.0, 2.0), rng.uniform(0.2, 2.0), 1.0);
    const ComplexMatrix lhs = commutator(build_hamiltonian(p), on_B(spin::sy()));
    const ComplexMatrix rhs = Complex{0.0, -p.b} * on_B(spin::sx()) + Complex{0.0, p.alpha} * kron(spin::sx(), spin::sz());
    identity_err = std::max(identity_err, max_abs_diff(lhs, rhs));
  }
  r.check("commutator_identity", "[H, I x sy] = -iB I x sx + i alpha sx x sz", identity_err, 1e-13);

  int optimality = 0;
  for (int k = 0; k < 10; ++k) {
    const ModelParams p = params(rng.uniform(0.05, 2.0), rng.uniform(0.3, 1.5), rng.uniform(0.05, 3.0));
    const ProtocolTrace t = run_thermal_qet(p);
    ModelParams h0 = p;
    h0.epsilon = 0.0;
    const TelCurve curve(thermal_state(p), alice_sx_measurement(), build_hamiltonian(h0));
    for (int j = 0; j < 200; ++j)
      if (curve.delta_tel(rng.uniform(-kPi, kPi)) < t.delta_tel - 1e-12) ++optimality;
  }
  r.count("optimality", "delta_tel(theta) >= delta_tel(theta0) - 1e-12 (10 points x 200 angles)", optimality);

  int increases = 0;
  double prev = INFINITY;
  for (int i = 1; i <= 15; ++i) {
    const double e = run_thermal_qet(params(0.3, 1.0, 0.1 * i)).delta_extract;
    if (e > prev) ++increases;
    prev = e;
  }
  r.count("monotone_slice", "extraction non-increasing in T on {0.1..1.5}, B = 0.3, alpha = 1", increases);

  const double excited = run_excited_qet(params(0.5, 1.0, 1.0)).delta_extract;
  const double ground = run_thermal_qet(params(0.5, 1.0, 1e-3)).delta_extract;
  const double thermal = run_thermal_qet(params(0.5, 1.0, 0.5)).delta_extract;
  char detail[96];
  std::snprintf(detail, sizeof detail, "%.6g > %.6g > %.6g", excited, ground, thermal);
  r.expect("hierarchy", "excited > ground-limit > thermal(T=0.5) extraction at B=0.5, alpha=1",
           excited > ground && ground > thermal, detail);

  bool violation = false;
  try {
    (void)run_product_qee(params(0.6, 0.6, 1.0));
  } catch (const AssumptionViolation&) {
    violation = true;
  }
  r.expect("qee_assumption", "product-state run with B <= alpha raises AssumptionViolation", violation);

  double tie = run_thermal_qet(params(0.7, 0.7, 0.4)).delta_extract;
  r.check("b_equals_alpha", "no extraction at B = alpha", tie, 1e-12);
}

// ---------------------------------------------------------------------------

void closedform_suite(Recorder& r) {
  const closedform::ClosedFormBundle ex = closedform::evaluate(params(0.5, 1.0, 0.5));
  r.check("example_p", "p at (B=0.5, alpha=1, T=0.5) = 0.39719523977", std::abs(ex.p - 0.39719523977), 1e-10);
  r.check("example_q", "q at (B=0.5, alpha=1, T=0.5) = 0.0601504023", std::abs(ex.q - 0.0601504023), 1e-10);
  r.check("example_min", "minimum at (B=0.5, alpha=1, T=0.5) = -0.004528706975",
          std::abs(ex.delta_tel_min + 0.004528706975), 1e-11);
  const closedform::ClosedFormBundle qee = closedform::evaluate(params(1.0, 0.6, 1.0));
  r.check("example_qee_min", "qee_min at (B=1, alpha=0.6) = -0.083095", std::abs(qee.qee_min + 0.083095), 5e-7);

  int sign = 0;
  double f2 = 0.0, sim = 0.0, pt = 0.0, conc = 0.0, neg = 0.0, matrix = 0.0;
  for_thermal_grid(8, 8, [&](const ModelParams& p) {
    const closedform::ClosedFormBundle c = closedform::evaluate(p);
    if (c.delta_tel_min > 0.0) ++sign;
    f2 = std::max(f2, std::abs(c.f_second_deriv - (c.p - c.delta_tel_min)));

    const ProtocolTrace t = run_thermal_qet(p);
    sim = std::max({sim, std::abs(t.p - c.p), std::abs(t.q - c.q), std::abs(t.delta_inf - c.delta_inf),
                    std::abs(t.delta_tel - c.delta_tel_min), std::abs(t.e_initial - c.e_initial),
                    std::abs(t.e_after_measurement - c.e_after_measurement)});

    const DensityMatrix rho = thermal_state(p);
    std::array<double, 4> eigs{c.pt_eigs.lambda1, c.pt_eigs.lambda2, c.pt_eigs.lambda_plus, c.pt_eigs.lambda_minus};
    std::sort(eigs.begin(), eigs.end());
    const NegativityResult n = negativity(rho);
    for (std::size_t i = 0; i < 4; ++i) pt = std::max(pt, std::abs(eigs[i] - n.pt_eigenvalues[i]));
    conc = std::max(conc, std::abs(c.concurrence - concurrence(rho)));
    neg = std::max(neg, std::abs(c.negativity - n.negativity));
    matrix = std::max(matrix, max_abs_diff(closedform::thermal_matrix(p), rho.matrix()));
  });
  r.count("min_nonpositive", "p - sqrt(p^2 + q^2) <= 0 on the grid", sign);
  r.check("second_derivative", "F''(t0) = -min + p", f2, 1e-12);
  r.check("bundle_vs_simulation", "p, q, injected energy, minimum and stage energies match the simulation", sim,
          1e-10);
  r.check("pt_eigenvalues", "partial-transpose eigenvalues match the numerical spectrum", pt, 1e-12);
  r.check("concurrence", "closed-form concurrence matches the Wootters computation", conc, 1e-10);
  r.check("negativity", "closed-form negativity matches the numerical partial transpose", neg, 1e-12);
  r.check("thermal_matrix", "X-state entries reproduce the numerical Gibbs state", matrix, 1e-12);

  r.check("tie_at_b_equals_alpha", "minimum vanishes at B = alpha",
          std::abs(closedform::evaluate(params(0.8, 0.8, 0.7)).delta_tel_min), 1e-15);

  double limit = 0.0;
  for (auto [b, alpha] : {std::pair{0.5, 1.0}, {0.3, 0.6}, {0.1, 0.8}}) {
    const closedform::ClosedFormBundle c = closedform::evaluate(params(b, alpha, 1e-3));
    limit = std::max(limit, std::abs(-c.delta_tel_min - c.e_ground_extract));
  }
  r.check("ground_limit", "T -> 0 with B < alpha recovers the ground-state extraction", limit, 1e-9);

  int non_finite = 0;
  for (double t : {1e-3, 1e-4, 2e-3}) {
    const closedform::ClosedFormBundle c = closedform::evaluate(params(2.0, 1.0, t));
    for (double v : {c.p, c.q, c.delta_tel_min, c.delta_inf, c.concurrence, c.negativity, c.pt_eigs.lambda_minus})
      if (!std::isfinite(v)) ++non_finite;
  }
  r.count("overflow_guard", "all fields finite for beta B up to 2e4", non_finite);

  double tc = 0.0;
  for (double alpha : {0.6, 0.8, 1.0})
    tc = std::max(tc, std::abs(closedform::critical_temperature(alpha) -
                               closedform::critical_temperature_from_negativity(alpha)));
  r.check("tc_two_forms", "alpha/ln(1+sqrt2) = 2 alpha/acosh(3)", tc, 1e-14);
}

// ---------------------------------------------------------------------------

void correlations_suite(Recorder& r) {
  Rng rng(0xc0de);

  double pt_sum = 0.0;
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix g = detail::random_matrix(rng, 4);
    ComplexMatrix m = g * g.adjoint();
    m = (1.0 / m.trace().real()) * m;
    const DensityMatrix rho(0.5 * (m + m.adjoint()));
    const NegativityResult n = negativity(rho);
    double s = 0.0;
    for (double l : n.pt_eigenvalues) s += l;
    pt_sum = std::max(pt_sum, std::abs(s - 1.0));
  }
  r.check("pt_trace", "partial-transpose eigenvalues sum to 1 (20 random states)", pt_sum, 1e-12);

  int lambda_mismatch = 0;
  const double threshold = std::acosh(3.0) / 2.0;
  for (double alpha : {0.6, 0.8, 1.0}) {
    for (int i = 0; i < 50; ++i) {
      const double beta = linspace(0.1, 5.0, 50, i);
      if (std::abs(beta * alpha - threshold) < 1e-9) continue;
      const closedform::PartialTransposeEigenvalues e =
          closedform::partial_transpose_eigenvalues(params(0.3, alpha, 1.0 / beta));
      if ((e.lambda_minus < 0.0) != (beta * alpha > threshold)) ++lambda_mismatch;
    }
  }
  r.count("lambda_minus_sign", "lambda- < 0 iff beta alpha > acosh(3)/2 (50 betas per alpha)", lambda_mismatch);

  int shared_tc = 0, unresolved = 0, gamma_bad = 0, negative_discord = 0;
  double trace_err = 0.0;
  for_thermal_grid(20, 20, [&](const ModelParams& p) {
    const DensityMatrix rho = thermal_state(p);
    // Points whose lambda- sits inside the +-1e-12 zero band cannot be
    // classified by negativity; concurrence still resolves them.
    const NegativityResult n = negativity(rho);
    if (std::abs(n.pt_eigenvalues[0]) <= 1e-12) {
      ++unresolved;
    } else if ((n.negativity > 0.0) != (concurrence(rho) > 0.0)) {
      ++shared_tc;
    }
    const CorrelationReport c = discord_xstate(p);
    const closedform::XStateEntries& x = c.x_params;
    trace_err = std::max(trace_err, std::abs(x.a + x.d + 2.0 * x.w - 1.0));
    if (c.gamma < std::abs(x.a - x.d)) ++gamma_bad;
    if (c.discord < -1e-12) ++negative_discord;
  });
  r.count("shared_tc", "negativity and concurrence vanish on the same grid points", shared_tc,
          std::to_string(unresolved) + " points with |lambda-| <= 1e-12 skipped");
  r.check("x_trace", "a + d + 2w = 1", trace_err, 1e-12);
  r.count("gamma_bound", "Gamma >= |a - d|", gamma_bad);
  r.count("discord_nonnegative", "closed-form discord >= 0 on the grid", negative_discord);

  double product = 0.0, random_min = 0.0;
  for (int k = 0; k < 10; ++k) {
    auto qubit = [&] {
      const ComplexMatrix g = detail::random_matrix(rng, 2);
      const ComplexMatrix m = g * g.adjoint();
      return (1.0 / m.trace().real()) * m;
    };
    const ComplexMatrix pa = qubit(), pb = qubit();
    const ComplexMatrix m = kron(pa, pb);
    product = std::max(product, std::abs(discord_numeric(DensityMatrix(0.5 * (m + m.adjoint())))));

    const ComplexMatrix g = detail::random_matrix(rng, 4);
    ComplexMatrix mixed = g * g.adjoint();
    mixed = (1.0 / mixed.trace().real()) * mixed;
    random_min = std::min(random_min, discord_numeric(DensityMatrix(0.5 * (mixed + mixed.adjoint()))));
  }
  r.check("product_discord", "numeric discord of 10 random product states", product, 1e-9);
  r.check("numeric_nonnegative", "numeric discord of 10 random states is >= 0", -random_min, 1e-12);

  double channel = 0.0, idempotent = 0.0;
  const MeasurementSet m = alice_sx_measurement();
  for (auto [b, alpha, t] : {std::tuple{0.5, 1.0, 0.5}, {1.2, 0.6, 0.3}, {0.2, 0.8, 2.0}}) {
    const ModelParams p = params(b, alpha, t);
    const DensityMatrix rho = thermal_state(p);
    const DensityMatrix post = post_measurement_state(rho);
    channel = std::max(channel, max_abs_diff(post.matrix(), measure(rho, m, build_hamiltonian(p)).state.matrix()));
    idempotent = std::max(idempotent, max_abs_diff(post_measurement_state(post).matrix(), post.matrix()));
  }
  r.check("post_measurement_channel", "post-measurement state equals the protocol's measured state", channel, 1e-12);
  r.check("post_measurement_idempotent", "measuring twice changes nothing", idempotent, 1e-14);

  int unentangled = 0;
  for (double alpha : {0.6, 0.8, 1.0}) {
    const DensityMatrix rho = thermal_state(params(alpha, alpha, 0.5 * critical_temperature(alpha)));
    if (!(negativity(rho).negativity > 0.0 && concurrence(rho) > 0.0)) ++unentangled;
  }
  r.count("entangled_at_b_equals_alpha", "N, C > 0 at B = alpha, T = Tc/2", unentangled);

  double agree = 0.0;
  for (auto [b, alpha, t] : {std::tuple{0.5, 1.0, 0.5}, {1.5, 0.6, 0.8}, {0.05, 0.8, 2.5}}) {
    const ModelParams p = params(b, alpha, t);
    agree = std::max(agree, std::abs(discord_xstate(p).discord - discord_numeric(thermal_state(p))));
  }
  r.check("discord_forms_agree", "closed-form and numeric discord agree at 3 points", agree, 1e-5);
}

// ---------------------------------------------------------------------------

void cli_suite(Recorder& r) {
  using sweep::Quantity;
  sweep::SweepConfig cfg;
  cfg.alpha = 0.6;
  cfg.t_min = 0.1;
  cfg.t_max = 1.0;
  cfg.t_steps = 2;
  cfg.b_min = 0.1;
  cfg.b_max = 1.0;
  cfg.b_steps = 2;
  cfg.quantities = {Quantity::kExtract, Quantity::kDiscord};
  const auto rows = sweep::run(cfg, 1);
  r.expect("row_count", "2x2 grid gives 4 rows", rows.size() == 4);
  r.expect("row_order", "rows are T-major then B",
           rows.size() == 4 && rows[0].t == rows[1].t && rows[0].b < rows[1].b && rows[2].t > rows[0].t);

  std::ostringstream csv;
  sweep::write_csv(csv, cfg, rows);
  r.expect("header", "header is T,B,alpha,<quantities>", csv.str().rfind("T,B,alpha,extract,discord\n", 0) == 0);

  sweep::SweepConfig big = cfg;
  big.t_steps = 6;
  big.b_steps = 7;
  big.quantities = {Quantity::kExtract, Quantity::kNegativity, Quantity::kThetaOpt};
  std::ostringstream one, two, three;
  sweep::write_csv(one, big, sweep::run(big, 1));
  sweep::write_csv(two, big, sweep::run(big, 1));
  sweep::write_csv(three, big, sweep::run(big, 3));
  r.expect("deterministic", "repeated sweeps produce identical CSV", one.str() == two.str());
  r.expect("order_restoring", "3 worker threads give the same CSV as 1", one.str() == three.str());

  Rng rng(0x5eed);
  int roundtrip = 0;
  for (int k = 0; k < 200; ++k) {
    const double v = std::exp(rng.uniform(-40.0, 40.0)) * (k % 2 ? 1.0 : -1.0);
    if (std::strtod(sweep::format_value(v).c_str(), nullptr) != v) ++roundtrip;
  }
  r.count("format_roundtrip", "17-significant-digit values parse back exactly", roundtrip);

  sweep::SweepConfig hot = cfg;
  hot.t_min = 0.69;
  hot.t_max = 2.0;
  hot.t_steps = 10;
  hot.b_min = 0.0;
  hot.b_max = 2.0;
  hot.b_steps = 10;
  hot.quantities = {Quantity::kConcurrence};
  int nonzero = 0;
  for (const auto& row : sweep::run(hot, 1))
    if (row.values[0] != 0.0) ++nonzero;
  r.count("concurrence_above_tc", "alpha = 0.6: concurrence is 0 for T > 0.68, any B", nonzero);

  sweep::SweepConfig zero_set = cfg;
  zero_set.t_min = 0.05;
  zero_set.t_max = 2.0;
  zero_set.t_steps = 10;
  zero_set.b_min = 0.0;
  zero_set.b_max = 1.2;
  zero_set.b_steps = 3;  // B = 0, alpha, 2 alpha
  zero_set.quantities = {Quantity::kExtract};
  double on_zero_set = 0.0, off_zero_set = INFINITY;
  for (const auto& row : sweep::run(zero_set, 1)) {
    if (row.b > 1.0)
      off_zero_set = std::min(off_zero_set, row.values[0]);
    else
      on_zero_set = std::max(on_zero_set, row.values[0]);
  }
  r.check("extract_zero_set", "extraction vanishes along B = 0 and B = alpha", on_zero_set, 1e-12);
  r.expect("extract_off_zero_set", "extraction is positive at B = 2 alpha", off_zero_set > 0.0);

  struct Bad {
    const char* flag;
    void (*mutate)(sweep::SweepConfig&);
  };
  const Bad bad[] = {
      {"--alpha", [](sweep::SweepConfig& c) { c.alpha = 0.0; }},
      {"--t-min", [](sweep::SweepConfig& c) { c.t_min = 0.0; }},
      {"--t-max", [](sweep::SweepConfig& c) { c.t_max = c.t_min; }},
      {"--t-steps", [](sweep::SweepConfig& c) { c.t_steps = 1; }},
      {"--b-min", [](sweep::SweepConfig& c) { c.b_min = -1.0; }},
      {"--b-max", [](sweep::SweepConfig& c) { c.b_max = c.b_min - 1.0; }},
      {"--b-steps", [](sweep::SweepConfig& c) { c.b_steps = 10001; }},
      {"--quantity", [](sweep::SweepConfig& c) { c.quantities.clear(); }},
  };
  int misreported = 0;
  for (const Bad& b : bad) {
    sweep::SweepConfig c = cfg;
    b.mutate(c);
    try {
      c.validate();
      ++misreported;
    } catch (const sweep::ConfigError& e) {
      if (e.flag() != b.flag) ++misreported;
    }
  }
  r.count("config_errors", "invalid ranges are rejected naming the offending flag", misreported);
}

using Suite = void (*)(Recorder&);

struct ModuleEntry {
  std::string_view name;
  Suite suite;
};

constexpr ModuleEntry kModules[] = {
    {"qmatrix", qmatrix_suite},   {"xy_model", xy_model_suite},         {"protocol", protocol_suite},
    {"closedform", closedform_suite}, {"correlations", correlations_suite}, {"cli", cli_suite},
};

}  // namespace

std::vector<std::string_view> module_names() {
  std::vector<std::string_view> out;
  for (const ModuleEntry& m : kModules) out.push_back(m.name);
  return out;
}

std::vector<CheckResult> run_module(std::string_view module, const Options& options) {
  for (const ModuleEntry& m : kModules) {
    if (m.name != module) continue;
    std::vector<CheckResult> out;
    Recorder r(std::string(m.name), options, out);
    m.suite(r);
    return out;
  }
  throw std::invalid_argument("unknown module: " + std::string(module));
}

std::vector<CheckResult> run_module_checks(const Options& options) {
  std::vector<CheckResult> out;
  for (const ModuleEntry& m : kModules) {
    auto part = run_module(m.name, options);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace qet::verify
