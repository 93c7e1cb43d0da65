#pragma once

// Measurement -> classical communication -> conditional rotation pipeline.
//
// Alice measures sx on qubit A with projectors M(k) = (I + k sx)/2 x I,
// k = +1, -1. Bob, told k, applies U_k = cos(theta) I + i k (n . s) sin(theta)
// on qubit B. Every energy below is a direct trace tr(H rho) against the
// offset-free Hamiltonian unless stated otherwise; the product-state run keeps
// the epsilon = B offset inside its site split.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qet/qmatrix.hpp"
#include "qet/xy_model.hpp"

namespace qet {

using Axis = std::array<double, 3>;

inline constexpr Axis kAxisY{0.0, 1.0, 0.0};

/// Two-outcome measurement on qubit A.
struct MeasurementSet {
  std::array<int, 2> outcomes{+1, -1};
  std::array<ComplexMatrix, 2> operators;

  /// Completeness, hermiticity and idempotence to 1e-12; throws std::invalid_argument.
  void validate() const;
};

/// M(k) = (I + k sx)/2 on qubit A.
MeasurementSet alice_sx_measurement();

/// Unnormalized post-measurement branches M(k) rho M(k)^dagger.
struct MeasuredBranches {
  std::array<int, 2> outcomes;
  std::array<ComplexMatrix, 2> unnormalized;
};

MeasuredBranches measured_branches(const DensityMatrix& rho, const MeasurementSet& m);

struct MeasurementResult {
  DensityMatrix state;   ///< sum_k M(k) rho M(k)^dagger
  double energy;         ///< tr(H state)
  MeasuredBranches branches;
};

MeasurementResult measure(const DensityMatrix& rho, const MeasurementSet& m, const ComplexMatrix& hamiltonian);

/// Bob's outcome-conditioned rotation.
struct LoccUnitary {
  double theta = 0.0;
  Axis axis = kAxisY;

  /// Throws std::invalid_argument unless |axis| = 1 to 1e-12.
  void validate() const;
  /// 2x2 operator cos(theta) I + i k (n . s) sin(theta).
  ComplexMatrix local_operator(int k) const;
};

/// rho_B = sum_k U_k M(k) rho M(k)^dagger U_k^dagger
DensityMatrix apply_locc(const MeasuredBranches& branches, const LoccUnitary& u);

/// Energy change E_B - E_A as a function of Bob's rotation, for a fixed
/// initial state and measurement. Cheap to evaluate repeatedly.
class TelCurve {
 public:
  TelCurve(const DensityMatrix& rho, const MeasurementSet& m, ComplexMatrix hamiltonian);

  double energy_after_measurement() const noexcept { return e_after_measurement_; }
  const MeasuredBranches& branches() const noexcept { return branches_; }
  const ComplexMatrix& hamiltonian() const noexcept { return h_; }

  /// E_B(theta, axis) - E_A by direct trace. No validation of the axis.
  double delta_tel(double theta, const Axis& axis = kAxisY) const;
  /// Same, parametrized by t = 2 theta.
  double at_t(double t, const Axis& axis = kAxisY) const { return delta_tel(0.5 * t, axis); }

  /// delta_tel(v) = v^T Q v for v = (cos theta, sin theta * axis) on the
  /// unit 3-sphere. Entries built from direct traces.
  std::array<std::array<double, 4>, 4> quadratic_form() const;

 private:
  ComplexMatrix h_;
  MeasuredBranches branches_;
  double e_after_measurement_;
};

/// Coefficients of delta_tel(t) = p (1 - cos t) - q sin t along a fixed axis,
/// read off the simulated curve as p = F(pi)/2 and q = p - F(pi/2).
struct CurveCoefficients {
  double p, q;
};

CurveCoefficients curve_coefficients(const TelCurve& curve, const Axis& axis = kAxisY);

struct AngleOptimum {
  double t0;      ///< atan2(q, p)
  double theta0;  ///< t0 / 2
};

/// t0 = atan2(q, p). Throws std::domain_error when p = q = 0.
AngleOptimum optimal_angle_from(double p, double q);

/// Energy injected by Alice's measurement on the thermal state, E_A - E_initial,
/// by direct trace.
double delta_inf(const ModelParams& params);

/// Optimal rotation for the thermal run, using coefficients read off the
/// simulated curve.
AngleOptimum optimal_angle(const ModelParams& params);

/// Central second difference of the simulated thermal F(t) at t0, step 1e-4.
double verify_minimum(const ModelParams& params, double t0);

struct ProtocolTrace {
  double e_initial;            ///< tr(H rho)
  double e_after_measurement;  ///< E_A
  double e_after_locc;         ///< E_B at the optimal rotation
  double delta_inf;            ///< E_A - e_initial
  double delta_tel;            ///< E_B - E_A
  double delta_extract;        ///< max(0, -delta_tel)
  double theta_opt;
  double t0;
  double p;
  double q;
  double l;  ///< (cos(2 theta) B - sin(2 theta) alpha) / 4 at theta_opt
  double m;  ///< (cos(2 theta) alpha + sin(2 theta) B) / 4 at theta_opt
  DensityMatrix rho_initial;
  DensityMatrix rho_after_measurement;
  DensityMatrix rho_final;
};

ProtocolTrace run_thermal_qet(const ModelParams& params);

/// Starts from psi+ = (|01> + |10>)/sqrt2; temperature is ignored.
ProtocolTrace run_excited_qet(const ModelParams& params);

/// Site split of the epsilon = B Hamiltonian: H_A = (B/2)(I + sz) x I,
/// H_B = I x (B/2)(I + sz), V = alpha (s+ x s- + s- x s+).
struct SiteSplit {
  ComplexMatrix h_a;
  ComplexMatrix h_b;
  ComplexMatrix v;
  ComplexMatrix total() const { return h_a + h_b + v; }
};

SiteSplit qee_site_split(const ModelParams& params);

struct QeeBreakdown {
  double e_site_a;       ///< tr(H_A rho_A)
  double e_site_b;       ///< tr(H_B rho_A)
  double e_interaction;  ///< tr(V rho_A)
  SiteSplit h_split;
};

/// Thrown when a run's regime assumption does not hold.
class AssumptionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct QeeRun {
  ProtocolTrace trace;
  QeeBreakdown breakdown;
};

/// Starts from the product ground state |00>; requires B > alpha (throws
/// AssumptionViolation otherwise). Energies use the epsilon = B Hamiltonian.
QeeRun run_product_qee(const ModelParams& params);

/// Lagrange-multiplier bookkeeping for the general-axis problem with
/// A = sinh(beta B)/Z, K = sinh(beta alpha)/Z, c = 1 - cos t, s = sin t.
struct AxisOptimizationRecord {
  double a_coef;
  double k_coef;
  double c;
  double s;
  double l_prime;
  double m_prime;
  double lambda;
  std::array<double, 4> residuals;  ///< dL/dn1, dL/dn2, dL/dn3, dL/dlambda
  double max_residual() const;
};

/// Lagrange data at (theta, axis) for the thermal run.
AxisOptimizationRecord lagrange_record(const ModelParams& params, double theta, const Axis& axis);

struct AxisOptimization {
  Axis axis;          ///< canonical: theta in [0, pi/2]
  double theta;
  double delta_tel;
  bool tie;           ///< no extraction possible; every axis ties at 0
  Axis grid_axis;     ///< best Fibonacci-grid point
  Axis simplex_axis;  ///< after Nelder-Mead
  double simplex_delta_tel;
  AxisOptimizationRecord record;
};

/// Minimizes delta_tel(theta, n) jointly over theta and the unit sphere:
/// Fibonacci grid, Nelder-Mead refinement, then an exact polish from the
/// lowest eigenvector of TelCurve::quadratic_form().
AxisOptimization optimize_axis(const ModelParams& params, int grid_points = 2000);

/// Fibonacci lattice of `count` unit vectors.
std::vector<Axis> fibonacci_sphere(int count);

}  // namespace qet
