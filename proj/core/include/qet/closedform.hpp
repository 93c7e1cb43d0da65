#pragma once

// Analytic expressions for the thermal, excited-state and product-state
// protocols on the two-qubit XY model. Nothing in here touches a matrix
// except thermal_matrix(), which writes the analytic Gibbs state out entry
// by entry for comparison against the simulated one.
//
// Thermal quantities are evaluated through hyperbolic ratios such as
// sinh(beta B)/Z. Once beta*B or beta*alpha exceeds 350 the ratios are
// computed with every exponential rescaled by exp(-beta*max(B, alpha)), so
// very low temperatures stay finite.

#include <array>

#include "qet/qmatrix.hpp"
#include "qet/xy_model.hpp"

namespace qet::closedform {

/// Hyperbolic ratios over the offset-free partition function.
struct ThermalRatios {
  double sinh_b_over_z;       ///< A = sinh(beta B)/Z
  double sinh_alpha_over_z;   ///< K = sinh(beta alpha)/Z
  double cosh_b_over_z;       ///< cosh(beta B)/Z
  double cosh_alpha_over_z;   ///< cosh(beta alpha)/Z
  double exp_plus_b_over_z;   ///< e^{beta B}/Z
  double exp_minus_b_over_z;  ///< e^{-beta B}/Z
  double exp_plus_alpha_over_z;
  double exp_minus_alpha_over_z;
  double inv_z;               ///< 1/Z
};

ThermalRatios thermal_ratios(const ModelParams& params);

/// Entries of the X-shaped thermal state: a = e^{-beta B}/Z,
/// d = e^{beta B}/Z, w = cosh(beta alpha)/Z, z = -sinh(beta alpha)/Z.
struct XStateEntries {
  double a, d, w, z;
  double w_plus_z;   ///< e^{-beta alpha}/Z, computed without cancellation
  double w_minus_z;  ///< e^{+beta alpha}/Z
};

XStateEntries x_state_entries(const ModelParams& params);

/// The Gibbs state written out entrywise. In the |0> = spin-down frame the
/// |00> corner carries d and the |11> corner carries a; the |01>,|10> block
/// is [[w, z], [z, w]].
ComplexMatrix thermal_matrix(const ModelParams& params);

/// Its partial transpose on qubit B: the coherence z moves to the
/// (|00>, |11>) corner.
ComplexMatrix thermal_matrix_partial_transpose(const ModelParams& params);

struct PartialTransposeEigenvalues {
  double lambda1, lambda2;  ///< cosh(beta alpha)/Z, twice
  double lambda_plus, lambda_minus;
};

/// (cosh(beta B) +- sqrt(sinh^2(beta B) + sinh^2(beta alpha)))/Z for the
/// pair, which is the printed (1 + e^{2 beta B} +- sqrt(...))/(2 Z e^{beta B})
/// after dividing numerator and denominator by e^{beta B}.
PartialTransposeEigenvalues partial_transpose_eigenvalues(const ModelParams& params);

/// The same pair evaluated exactly as printed, without rescaling. Overflows
/// for beta*B beyond ~170; used to cross-check the rescaled form.
std::array<double, 2> partial_transpose_pair_as_printed(const ModelParams& params);

/// T_c = alpha / ln(1 + sqrt 2)
double critical_temperature(double alpha);
/// T_c = 2 alpha / acosh(3), the negativity route; equal to the above.
double critical_temperature_from_negativity(double alpha);

/// max{0, (2/Z)(sinh(beta alpha) - 1)}
double concurrence(const ModelParams& params);

/// max(0, -lambda_minus)
double negativity(const ModelParams& params);

/// F(t) = p(1 - cos t) - q sin t, the energy change of the thermal run
/// after Bob's rotation by theta = t/2 about sy.
double thermal_tel_curve(const ModelParams& params, double t);

/// Eq. 39 curve for the product ground state: (B/2)(1 - cos 2 theta) + (alpha/2) sin 2 theta.
double qee_tel_curve(double b, double alpha, double theta);

struct ClosedFormBundle {
  double delta_inf;        ///< p
  double p;
  double q;
  double t0;               ///< atan2(q, p)
  double theta0;           ///< t0 / 2
  double delta_tel_min;    ///< p - sqrt(p^2 + q^2)
  double f_second_deriv;   ///< sqrt(p^2 + q^2)
  double e_after_measurement;  ///< -p, energy after Alice's measurement (epsilon = 0)
  double e_initial;        ///< -(B sinh(beta B) + alpha sinh(beta alpha)) * 2/Z
  double tc;
  double concurrence;
  double negativity;
  PartialTransposeEigenvalues pt_eigs;
  double e_plus_extract;   ///< (alpha + sqrt(alpha^2 + B^2)) / 2
  double e_ground_extract; ///< (sqrt(alpha^2 + B^2) - alpha) / 2
  double qee_min;          ///< (B - sqrt(B^2 + alpha^2)) / 2
  double qee_extract;      ///< (sqrt(B^2 + alpha^2) - B) / 2
  double qee_sin_2theta;   ///< -alpha / sqrt(alpha^2 + B^2)
  double qee_cos_2theta;   ///<  B / sqrt(alpha^2 + B^2)
};

ClosedFormBundle evaluate(const ModelParams& params);

}  // namespace qet::closedform
