#include "qet/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "nelder_mead.hpp"

namespace qet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroEigenvalue = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// -x log2(x / total), zero when x is zero.
double conditional_term(double x, double total) { return x > 0.0 ? -x * std::log2(x / total) : 0.0; }

double binary_entropy_of(double lo, double hi) {
  const std::array<double, 2> w{std::max(lo, 0.0), std::max(hi, 0.0)};
  return shannon_entropy_bits(w);
}

// Precomputed reduced operators: conditional B states after measuring A along
// n are (rho_B +- n . T) / 2 with T_i = tr_A[(sigma_i x I) rho].
struct ConditionalKernel {
  ComplexMatrix rho_b;
  std::array<ComplexMatrix, 3> t;

  explicit ConditionalKernel(const ComplexMatrix& rho)
      : rho_b(partial_trace_A(rho)),
        t{partial_trace_A(on_A(pauli_x()) * rho), partial_trace_A(on_A(pauli_y()) * rho),
          partial_trace_A(on_A(pauli_z()) * rho)} {}

  double operator()(const std::array<double, 3>& n) const {
    const ComplexMatrix nt = n[0] * t[0] + n[1] * t[1] + n[2] * t[2];
    double s = 0.0;
    for (double sign : {1.0, -1.0}) {
      const ComplexMatrix r = 0.5 * (rho_b + sign * nt);
      const double pk = r.trace().real();
      if (pk <= 0.0) continue;
      const auto ev = eigvals_hermitian_2x2((1.0 / pk) * r);
      s += pk * binary_entropy_of(ev[0], ev[1]);
    }
    return s;
  }
};

std::array<double, 3> bloch(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

}  // namespace

double shannon_entropy_bits(std::span<const double> weights) {
  double s = 0.0;
  for (double w : weights) s -= xlog2x(w);
  return s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const HermitianSpectrum spec = hermitian_eig(rho);
  double s = 0.0;
  for (double l : spec.eigenvalues) s -= xlog2x(std::max(l, 0.0));
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

NegativityResult negativity(const DensityMatrix& rho) {
  const HermitianSpectrum spec = hermitian_eig(partial_transpose_B(rho.matrix()));
  NegativityResult out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out.pt_eigenvalues[i] = spec.eigenvalues[i];
    if (spec.eigenvalues[i] < -kZeroEigenvalue) out.negativity += -spec.eigenvalues[i];
  }
  return out;
}

double concurrence(const DensityMatrix& rho) {
  // sqrt-eigenvalues of rho rho~ are the singular values of sqrt(rho) sqrt(rho~),
  // with sqrt(rho~) = (Y x Y) conj(sqrt(rho)) (Y x Y).
  const HermitianSpectrum spec = hermitian_eig(rho.matrix());
  ComplexMatrix sqrt_rho = ComplexMatrix::zero(4);
  for (std::size_t i = 0; i < 4; ++i) {
    double l = spec.eigenvalues[i];
    if (l < 0.0 && l >= -kZeroEigenvalue) l = 0.0;
    sqrt_rho = sqrt_rho + std::sqrt(std::max(l, 0.0)) * projector(spec.eigenvectors[i]);
  }
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  const std::vector<double> s = singular_values(sqrt_rho * yy * sqrt_rho.conjugate() * yy);
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

double critical_temperature(double alpha) { return closedform::critical_temperature(alpha); }

CorrelationReport discord_xstate(const ModelParams& params) {
  const closedform::XStateEntries x = closedform::x_state_entries(params);
  const double a = x.a, d = x.d, w = x.w, z = x.z;

  EntropyTerms e{};
  e.s_rho_a = -xlog2x(a + w) - xlog2x(w + d);
  e.s_rho = -(xlog2x(a) + xlog2x(d) + xlog2x(x.w_plus_z) + xlog2x(x.w_minus_z));
  e.s1 = conditional_term(a, a + w) + conditional_term(w, a + w) + conditional_term(d, d + w) +
         conditional_term(w, d + w);
  const double gamma = std::sqrt((a - d) * (a - d) + 4.0 * z * z);
  e.s2 = -xlog2x(0.5 * (1.0 + gamma)) - xlog2x(0.5 * (1.0 - gamma));

  CorrelationReport out{};
  out.x_params = x;
  out.entropies = e;
  out.gamma = gamma;
  out.discord = e.s_rho_a - e.s_rho + std::min(e.s1, e.s2);
  out.pt_eigenvalues = closedform::partial_transpose_eigenvalues(params);
  out.negativity = closedform::negativity(params);
  out.concurrence = closedform::concurrence(params);
  out.critical_temperature = closedform::critical_temperature(params.alpha);
  return out;
}

double conditional_entropy_after_measurement(const DensityMatrix& rho, const std::array<double, 3>& axis) {
  if (rho.dim() != 4) throw DimensionError("conditional_entropy_after_measurement: expected a two-qubit state");
  return ConditionalKernel(rho.matrix())(axis);
}

DiscordNumericResult discord_numeric_search(const DensityMatrix& rho, const DiscordSearch& search) {
  if (rho.dim() != 4) throw DimensionError("discord_numeric: expected a two-qubit state");
  if (search.polar_steps < 2 || search.azimuth_steps < 2) throw std::invalid_argument("discord_numeric: grid too small");
  const ConditionalKernel kernel(rho.matrix());

  double best = std::numeric_limits<double>::infinity();
  double best_polar = 0.0, best_azimuth = 0.0;
  for (int i = 0; i < search.polar_steps; ++i) {
    const double polar = kPi * i / search.polar_steps;
    for (int j = 0; j < search.azimuth_steps; ++j) {
      const double azimuth = 2.0 * kPi * j / search.azimuth_steps;
      const double v = kernel(bloch(polar, azimuth));
      if (v < best) {
        best = v;
        best_polar = polar;
        best_azimuth = azimuth;
      }
    }
  }

  const double step = kPi / search.polar_steps;
  auto f = [&](const std::array<double, 2>& x) { return kernel(bloch(x[0], x[1])); };
  const auto refined =
      detail::nelder_mead<2>(f, {best_polar, best_azimuth}, step, 0.01 * search.tolerance_bits, 1e-9);
  if (refined.value < best) {
    best = refined.value;
    best_polar = refined.x[0];
    best_azimuth = refined.x[1];
  }

  const double s_a = von_neumann_entropy(partial_trace_B(rho.matrix()));
  const double s_ab = von_neumann_entropy(rho);
  double d = s_a - s_ab + best;
  if (d < 0.0 && d > -kZeroEigenvalue) d = 0.0;
  return DiscordNumericResult{d, best, bloch(best_polar, best_azimuth)};
}

double discord_numeric(const DensityMatrix& rho, const DiscordSearch& search) {
  return discord_numeric_search(rho, search).discord;
}

DensityMatrix post_measurement_state(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("post_measurement_state: expected a two-qubit state");
  ComplexMatrix out = ComplexMatrix::zero(4);
  for (double k : {1.0, -1.0}) {
    const ComplexMatrix proj = on_A(0.5 * (identity2() + k * pauli_x()));
    out = out + proj * rho.matrix() * proj;
  }
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

}  // namespace qet
