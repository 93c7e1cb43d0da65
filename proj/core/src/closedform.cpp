#include "qet/closedform.hpp"

#include <algorithm>
#include <cmath>

namespace qet::closedform {

namespace {
constexpr double kOverflowGuard = 350.0;
}

ThermalRatios thermal_ratios(const ModelParams& params) {
  params.validate();
  const double xb = params.beta() * params.b;
  const double xa = params.beta() * params.alpha;

  ThermalRatios r{};
  if (std::max(xb, xa) <= kOverflowGuard) {
    const double z = 2.0 * (std::cosh(xa) + std::cosh(xb));
    r.sinh_b_over_z = std::sinh(xb) / z;
    r.sinh_alpha_over_z = std::sinh(xa) / z;
    r.cosh_b_over_z = std::cosh(xb) / z;
    r.cosh_alpha_over_z = std::cosh(xa) / z;
    r.exp_plus_b_over_z = std::exp(xb) / z;
    r.exp_minus_b_over_z = std::exp(-xb) / z;
    r.exp_plus_alpha_over_z = std::exp(xa) / z;
    r.exp_minus_alpha_over_z = std::exp(-xa) / z;
    r.inv_z = 1.0 / z;
    return r;
  }

  // Every exponential carries a factor e^{-m}.
  const double m = std::max(xb, xa);
  const double epb = std::exp(xb - m), emb = std::exp(-xb - m);
  const double epa = std::exp(xa - m), ema = std::exp(-xa - m);
  const double zs = epb + emb + epa + ema;  // Z e^{-m}
  r.sinh_b_over_z = 0.5 * (epb - emb) / zs;
  r.sinh_alpha_over_z = 0.5 * (epa - ema) / zs;
  r.cosh_b_over_z = 0.5 * (epb + emb) / zs;
  r.cosh_alpha_over_z = 0.5 * (epa + ema) / zs;
  r.exp_plus_b_over_z = epb / zs;
  r.exp_minus_b_over_z = emb / zs;
  r.exp_plus_alpha_over_z = epa / zs;
  r.exp_minus_alpha_over_z = ema / zs;
  r.inv_z = std::exp(-m) / zs;
  return r;
}

XStateEntries x_state_entries(const ModelParams& params) {
  const ThermalRatios r = thermal_ratios(params);
  return XStateEntries{
      .a = r.exp_minus_b_over_z,
      .d = r.exp_plus_b_over_z,
      .w = r.cosh_alpha_over_z,
      .z = -r.sinh_alpha_over_z,
      .w_plus_z = r.exp_minus_alpha_over_z,
      .w_minus_z = r.exp_plus_alpha_over_z,
  };
}

ComplexMatrix thermal_matrix(const ModelParams& params) {
  const XStateEntries x = x_state_entries(params);
  return ComplexMatrix(4, {x.d, 0.0, 0.0, 0.0,
                           0.0, x.w, x.z, 0.0,
                           0.0, x.z, x.w, 0.0,
                           0.0, 0.0, 0.0, x.a});
}

ComplexMatrix thermal_matrix_partial_transpose(const ModelParams& params) {
  const XStateEntries x = x_state_entries(params);
  return ComplexMatrix(4, {x.d, 0.0, 0.0, x.z,
                           0.0, x.w, 0.0, 0.0,
                           0.0, 0.0, x.w, 0.0,
                           x.z, 0.0, 0.0, x.a});
}

PartialTransposeEigenvalues partial_transpose_eigenvalues(const ModelParams& params) {
  const ThermalRatios r = thermal_ratios(params);
  const double root = std::hypot(r.sinh_b_over_z, r.sinh_alpha_over_z);
  return PartialTransposeEigenvalues{
      .lambda1 = r.cosh_alpha_over_z,
      .lambda2 = r.cosh_alpha_over_z,
      .lambda_plus = r.cosh_b_over_z + root,
      .lambda_minus = r.cosh_b_over_z - root,
  };
}

std::array<double, 2> partial_transpose_pair_as_printed(const ModelParams& params) {
  params.validate();
  const double beta = params.beta();
  const double z = 2.0 * (std::cosh(beta * params.alpha) + std::cosh(beta * params.b));
  const double e2 = std::exp(2.0 * beta * params.b);
  const double root = std::sqrt(1.0 - 4.0 * e2 + e2 * e2 + 2.0 * e2 * std::cosh(2.0 * beta * params.alpha));
  const double denom = 2.0 * z * std::exp(beta * params.b);
  return {(1.0 + e2 + root) / denom, (1.0 + e2 - root) / denom};
}

double critical_temperature(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("critical_temperature: alpha must be > 0");
  return alpha / std::log(1.0 + std::sqrt(2.0));
}

double critical_temperature_from_negativity(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("critical_temperature: alpha must be > 0");
  return 2.0 * alpha / std::acosh(3.0);
}

double concurrence(const ModelParams& params) {
  const ThermalRatios r = thermal_ratios(params);
  return std::max(0.0, 2.0 * (r.sinh_alpha_over_z - r.inv_z));
}

double negativity(const ModelParams& params) {
  return std::max(0.0, -partial_transpose_eigenvalues(params).lambda_minus);
}

namespace {
struct PQ {
  double p, q;
};

PQ thermal_pq(const ModelParams& params) {
  const ThermalRatios r = thermal_ratios(params);
  return PQ{params.b * r.sinh_b_over_z + params.alpha * r.sinh_alpha_over_z,
            params.b * r.sinh_alpha_over_z - params.alpha * r.sinh_b_over_z};
}
}  // namespace

double thermal_tel_curve(const ModelParams& params, double t) {
  const PQ c = thermal_pq(params);
  return c.p * (1.0 - std::cos(t)) - c.q * std::sin(t);
}

double qee_tel_curve(double b, double alpha, double theta) {
  return 0.5 * b * (1.0 - std::cos(2.0 * theta)) + 0.5 * alpha * std::sin(2.0 * theta);
}

ClosedFormBundle evaluate(const ModelParams& params) {
  const PQ c = thermal_pq(params);
  const double r = std::hypot(c.p, c.q);
  const double b = params.b, alpha = params.alpha;
  const double field_root = std::hypot(alpha, b);

  ClosedFormBundle out{};
  out.delta_inf = c.p;
  out.p = c.p;
  out.q = c.q;
  out.t0 = std::atan2(c.q, c.p);
  out.theta0 = 0.5 * out.t0;
  out.delta_tel_min = c.p - r;
  out.f_second_deriv = r;
  out.e_after_measurement = -c.p;
  out.e_initial = -2.0 * c.p;
  out.tc = critical_temperature(alpha);
  out.concurrence = concurrence(params);
  out.pt_eigs = partial_transpose_eigenvalues(params);
  out.negativity = std::max(0.0, -out.pt_eigs.lambda_minus);
  out.e_plus_extract = 0.5 * (alpha + field_root);
  out.e_ground_extract = 0.5 * (field_root - alpha);
  out.qee_min = 0.5 * (b - field_root);
  out.qee_extract = 0.5 * (field_root - b);
  out.qee_sin_2theta = -alpha / field_root;
  out.qee_cos_2theta = b / field_root;
  return out;
}

}  // namespace qet::closedform
