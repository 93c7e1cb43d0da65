#include "qet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nelder_mead.hpp"
#include "qet/closedform.hpp"

namespace qet {

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams without_offset(ModelParams p) {
  p.epsilon = 0.0;
  return p;
}

ComplexMatrix axis_operator(const Axis& n) {
  return n[0] * spin::sx() + n[1] * spin::sy() + n[2] * spin::sz();
}

Axis from_angles(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

DensityMatrix hermitized(const ComplexMatrix& m) { return DensityMatrix(0.5 * (m + m.adjoint())); }

}  // namespace

// ---------------------------------------------------------------------------
// Measurement

void MeasurementSet::validate() const {
  ComplexMatrix sum = ComplexMatrix::zero(operators[0].dim());
  for (const auto& m : operators) {
    if (!m.is_hermitian(1e-12)) throw std::invalid_argument("MeasurementSet: operator is not Hermitian");
    if (max_abs_diff(m * m, m) > 1e-12) throw std::invalid_argument("MeasurementSet: operator is not idempotent");
    sum = sum + m.adjoint() * m;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(sum.dim())) > 1e-12) {
    throw std::invalid_argument("MeasurementSet: sum_k M(k)^dagger M(k) != I");
  }
}

MeasurementSet alice_sx_measurement() {
  MeasurementSet m;
  for (std::size_t i = 0; i < 2; ++i) {
    const double k = m.outcomes[i];
    m.operators[i] = on_A(0.5 * (identity2() + k * spin::sx()));
  }
  return m;
}

MeasuredBranches measured_branches(const DensityMatrix& rho, const MeasurementSet& m) {
  MeasuredBranches out{m.outcomes, {}};
  for (std::size_t i = 0; i < 2; ++i) out.unnormalized[i] = m.operators[i] * rho.matrix() * m.operators[i].adjoint();
  return out;
}

MeasurementResult measure(const DensityMatrix& rho, const MeasurementSet& m, const ComplexMatrix& hamiltonian) {
  MeasuredBranches branches = measured_branches(rho, m);
  DensityMatrix state = hermitized(branches.unnormalized[0] + branches.unnormalized[1]);
  const double energy = state.expectation(hamiltonian);
  return MeasurementResult{std::move(state), energy, std::move(branches)};
}

// ---------------------------------------------------------------------------
// LOCC

void LoccUnitary::validate() const {
  if (!std::isfinite(theta)) throw std::invalid_argument("LoccUnitary: theta must be finite");
  const double n2 = axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
  if (std::abs(n2 - 1.0) > 1e-12) throw std::invalid_argument("LoccUnitary: rotation axis must be a unit vector");
}

ComplexMatrix LoccUnitary::local_operator(int k) const {
  return std::cos(theta) * identity2() + (kI * static_cast<double>(k) * std::sin(theta)) * axis_operator(axis);
}

DensityMatrix apply_locc(const MeasuredBranches& branches, const LoccUnitary& u) {
  u.validate();
  ComplexMatrix out = ComplexMatrix::zero(4);
  for (std::size_t i = 0; i < 2; ++i) {
    const ComplexMatrix ub = on_B(u.local_operator(branches.outcomes[i]));
    out = out + ub * branches.unnormalized[i] * ub.adjoint();
  }
  return hermitized(out);
}

// ---------------------------------------------------------------------------
// Energy-change curve

TelCurve::TelCurve(const DensityMatrix& rho, const MeasurementSet& m, ComplexMatrix hamiltonian)
    : h_(std::move(hamiltonian)), branches_(measured_branches(rho, m)) {
  e_after_measurement_ = (h_ * (branches_.unnormalized[0] + branches_.unnormalized[1])).trace().real();
}

double TelCurve::delta_tel(double theta, const Axis& axis) const {
  const LoccUnitary u{theta, axis};
  double e_b = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const ComplexMatrix ub = on_B(u.local_operator(branches_.outcomes[i]));
    e_b += (h_ * ub * branches_.unnormalized[i] * ub.adjoint()).trace().real();
  }
  return e_b - e_after_measurement_;
}

std::array<std::array<double, 4>, 4> TelCurve::quadratic_form() const {
  std::array<std::array<double, 4>, 4> q{};
  for (std::size_t b = 0; b < 2; ++b) {
    const double k = branches_.outcomes[b];
    const std::array<ComplexMatrix, 4> gens{
        ComplexMatrix::identity(4),
        (kI * k) * on_B(spin::sx()),
        (kI * k) * on_B(spin::sy()),
        (kI * k) * on_B(spin::sz()),
    };
    for (std::size_t i = 0; i < 4; ++i) {
      const ComplexMatrix left = h_ * gens[i] * branches_.unnormalized[b];
      for (std::size_t j = 0; j < 4; ++j) q[i][j] += (left * gens[j].adjoint()).trace().real();
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double sym = 0.5 * (q[i][j] + q[j][i]);
      q[i][j] = q[j][i] = sym;
    }
    q[i][i] -= e_after_measurement_;
  }
  return q;
}

CurveCoefficients curve_coefficients(const TelCurve& curve, const Axis& axis) {
  const double p = 0.5 * curve.at_t(kPi, axis);
  const double q = p - curve.at_t(0.5 * kPi, axis);
  return {p, q};
}

AngleOptimum optimal_angle_from(double p, double q) {
  if (p == 0.0 && q == 0.0) throw std::domain_error("optimal_angle: p = q = 0, the energy curve is flat");
  const double t0 = std::atan2(q, p);
  return {t0, 0.5 * t0};
}

namespace {
TelCurve thermal_curve(const ModelParams& params) {
  return TelCurve(thermal_state(params), alice_sx_measurement(), build_hamiltonian(without_offset(params)));
}
}  // namespace

double delta_inf(const ModelParams& params) {
  const DensityMatrix rho = thermal_state(params);
  const ComplexMatrix h = build_hamiltonian(without_offset(params));
  const MeasurementResult r = measure(rho, alice_sx_measurement(), h);
  return r.energy - rho.expectation(h);
}

AngleOptimum optimal_angle(const ModelParams& params) {
  const CurveCoefficients c = curve_coefficients(thermal_curve(params));
  return optimal_angle_from(c.p, c.q);
}

double verify_minimum(const ModelParams& params, double t0) {
  constexpr double h = 1e-4;
  const TelCurve curve = thermal_curve(params);
  return (curve.at_t(t0 + h) - 2.0 * curve.at_t(t0) + curve.at_t(t0 - h)) / (h * h);
}

// ---------------------------------------------------------------------------
// Runs

namespace {

ProtocolTrace run_pipeline(const DensityMatrix& rho, const ComplexMatrix& h, const ModelParams& params) {
  const MeasurementSet m = alice_sx_measurement();
  const MeasurementResult measured = measure(rho, m, h);
  const TelCurve curve(rho, m, h);
  const CurveCoefficients c = curve_coefficients(curve);
  const AngleOptimum opt = optimal_angle_from(c.p, c.q);
  DensityMatrix final_state = apply_locc(measured.branches, LoccUnitary{opt.theta0, kAxisY});

  const double e_initial = rho.expectation(h);
  const double e_b = final_state.expectation(h);
  const double delta_tel = e_b - measured.energy;
  const double c2 = std::cos(opt.t0), s2 = std::sin(opt.t0);
  return ProtocolTrace{
      .e_initial = e_initial,
      .e_after_measurement = measured.energy,
      .e_after_locc = e_b,
      .delta_inf = measured.energy - e_initial,
      .delta_tel = delta_tel,
      .delta_extract = std::max(0.0, -delta_tel),
      .theta_opt = opt.theta0,
      .t0 = opt.t0,
      .p = c.p,
      .q = c.q,
      .l = 0.25 * (c2 * params.b - s2 * params.alpha),
      .m = 0.25 * (c2 * params.alpha + s2 * params.b),
      .rho_initial = rho,
      .rho_after_measurement = measured.state,
      .rho_final = std::move(final_state),
  };
}

}  // namespace

ProtocolTrace run_thermal_qet(const ModelParams& params) {
  params.validate();
  return run_pipeline(thermal_state(params), build_hamiltonian(without_offset(params)), params);
}

ProtocolTrace run_excited_qet(const ModelParams& params) {
  params.validate_couplings();
  return run_pipeline(DensityMatrix::pure(level_state(LevelLabel::kPlus)), build_hamiltonian(without_offset(params)),
                      params);
}

SiteSplit qee_site_split(const ModelParams& params) {
  params.validate_couplings();
  const double b = params.b;
  const ComplexMatrix site = (b / 2.0) * (identity2() + spin::sz());
  return SiteSplit{
      .h_a = on_A(site),
      .h_b = on_B(site),
      .v = params.alpha * (kron(spin::splus(), spin::sminus()) + kron(spin::sminus(), spin::splus())),
  };
}

QeeRun run_product_qee(const ModelParams& params) {
  params.validate_couplings();
  if (!(params.b > params.alpha)) {
    throw AssumptionViolation(
        "product-state extraction requires B > alpha so that |00> is the (product) ground state");
  }
  SiteSplit split = qee_site_split(params);
  const ComplexMatrix h = split.total();
  const DensityMatrix rho = DensityMatrix::pure(level_state(LevelLabel::k00));
  ProtocolTrace trace = run_pipeline(rho, h, params);

  const DensityMatrix& measured = trace.rho_after_measurement;
  QeeBreakdown breakdown{
      .e_site_a = measured.expectation(split.h_a),
      .e_site_b = measured.expectation(split.h_b),
      .e_interaction = measured.expectation(split.v),
      .h_split = std::move(split),
  };
  return QeeRun{std::move(trace), std::move(breakdown)};
}

// ---------------------------------------------------------------------------
// General-axis optimization

double AxisOptimizationRecord::max_residual() const {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, std::abs(r));
  return worst;
}

AxisOptimizationRecord lagrange_record(const ModelParams& params, double theta, const Axis& n) {
  const closedform::ThermalRatios r = closedform::thermal_ratios(params);
  const double b = params.b, alpha = params.alpha;
  const double a_coef = r.sinh_b_over_z, k_coef = r.sinh_alpha_over_z;
  const double t = 2.0 * theta;
  const double c = 1.0 - std::cos(t), s = std::sin(t);
  const double sin2 = std::sin(theta) * std::sin(theta), cos2 = std::cos(theta) * std::cos(theta);

  // Gradient of the objective part of the Lagrangian.
  const std::array<double, 3> grad{
      (b * a_coef * c - alpha * k_coef * c) * n[0],
      (b * a_coef * c + alpha * k_coef * c) * n[1] + alpha * a_coef * s - b * k_coef * s,
      (-b * a_coef * c + alpha * k_coef * c) * n[2],
  };
  const double nn = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
  const double lambda = -(grad[0] * n[0] + grad[1] * n[1] + grad[2] * n[2]) / (2.0 * nn);

  AxisOptimizationRecord rec{};
  rec.a_coef = a_coef;
  rec.k_coef = k_coef;
  rec.c = c;
  rec.s = s;
  rec.l_prime = -(b / 4.0) * ((n[0] * n[0] + n[1] * n[1] - n[2] * n[2]) * sin2 - cos2) - (alpha * n[1] / 4.0) * s;
  rec.m_prime = (alpha / 4.0) * ((n[0] * n[0] - n[1] * n[1] - n[2] * n[2]) * sin2 + cos2) + (b * n[1] / 4.0) * s;
  rec.lambda = lambda;
  for (std::size_t i = 0; i < 3; ++i) rec.residuals[i] = grad[i] + 2.0 * lambda * n[i];
  rec.residuals[3] = nn - 1.0;
  return rec;
}

std::vector<Axis> fibonacci_sphere(int count) {
  if (count < 1) throw std::invalid_argument("fibonacci_sphere: count must be >= 1");
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Axis> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return pts;
}

namespace {

struct ReducedValue {
  double value;
  double theta;  ///< signed optimal theta for this axis
};

// min over theta of delta_tel(theta, n) from the curve's (p, q).
ReducedValue reduced_objective(const TelCurve& curve, const Axis& n) {
  const CurveCoefficients c = curve_coefficients(curve, n);
  const double r = std::hypot(c.p, c.q);
  if (r == 0.0) return {0.0, 0.0};
  return {c.p - r, 0.5 * std::atan2(c.q, c.p)};
}

Axis canonical_axis(const Axis& n, double theta) {
  return theta < 0.0 ? Axis{-n[0], -n[1], -n[2]} : n;
}

}  // namespace

AxisOptimization optimize_axis(const ModelParams& params, int grid_points) {
  params.validate();
  const TelCurve curve = thermal_curve(params);

  // Coarse grid.
  const std::vector<Axis> grid = fibonacci_sphere(grid_points);
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = reduced_objective(curve, grid[i]).value;
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const Axis g = grid[best];

  // Nelder-Mead over (polar, azimuth).
  const double polar0 = std::acos(std::clamp(g[2], -1.0, 1.0));
  const double azimuth0 = std::atan2(g[1], g[0]);
  const double step = std::sqrt(4.0 * kPi / grid_points);
  auto f = [&](const std::array<double, 2>& x) { return reduced_objective(curve, from_angles(x[0], x[1])).value; };
  const auto simplex = detail::nelder_mead<2>(f, {polar0, azimuth0}, step, 1e-16, 1e-10);
  const Axis nm_axis_raw = from_angles(simplex.x[0], simplex.x[1]);
  const ReducedValue nm = reduced_objective(curve, nm_axis_raw);

  // Exact polish: lowest eigenvector of the quadratic form on S^3.
  const auto qf = curve.quadratic_form();
  const ComplexMatrix qm = ComplexMatrix::from_fn(4, [&](std::size_t i, std::size_t j) { return Complex{qf[i][j]}; });
  const HermitianSpectrum spec = hermitian_eig(qm);
  const ComplexVector& ev = spec.eigenvectors.front();
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) v[i] = ev[i].real();
  const double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  for (double& x : v) x /= vn;
  if (v[0] < 0.0)
    for (double& x : v) x = -x;
  const double sin_part = std::sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);

  AxisOptimization out{};
  out.grid_axis = canonical_axis(g, reduced_objective(curve, g).theta);
  out.simplex_axis = canonical_axis(nm_axis_raw, nm.theta);
  out.simplex_delta_tel = nm.value;

  if (sin_part > 1e-12) {
    out.axis = {v[1] / sin_part, v[2] / sin_part, v[3] / sin_part};
    out.theta = std::atan2(sin_part, v[0]);
    out.delta_tel = curve.delta_tel(out.theta, out.axis);
  } else {
    out.axis = kAxisY;
    out.theta = 0.0;
    out.delta_tel = 0.0;
  }
  if (nm.value < out.delta_tel - 1e-12) {
    // The polish is the exact minimizer, so the simplex can only win through a
    // failed eigensolve; rounding-level wins are ignored.
    out.axis = out.simplex_axis;
    out.theta = std::abs(nm.theta);
    out.delta_tel = nm.value;
  }
  out.tie = -out.delta_tel < 1e-12;
  if (out.tie) {
    out.axis = kAxisY;
    out.theta = 0.0;
    out.delta_tel = 0.0;
  }
  out.record = lagrange_record(params, out.theta, out.axis);
  return out;
}

}  // namespace qet
