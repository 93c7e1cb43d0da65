#pragma once

// Entanglement and discord of two-qubit states.
//
// Entropies are in bits with 0 log 0 = 0. Discord is always taken with the
// measurement on subsystem A, over rank-one projective measurements.

#include <array>
#include <span>

#include "qet/closedform.hpp"
#include "qet/xy_model.hpp"

namespace qet {

/// -sum x log2 x over the given weights; zero weights contribute nothing.
double shannon_entropy_bits(std::span<const double> weights);

/// von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const ComplexMatrix& rho);

struct NegativityResult {
  double negativity;
  std::array<double, 4> pt_eigenvalues;  ///< ascending
};

/// Sum of |lambda| over eigenvalues of the B-partial transpose below -1e-12.
NegativityResult negativity(const DensityMatrix& rho);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), l_i the square roots of the
/// eigenvalues of rho rho~, obtained directly as singular values so that
/// near-pure states keep full precision. Eigenvalues of rho in [-1e-12, 0)
/// are clamped to zero before the matrix square root.
double concurrence(const DensityMatrix& rho);

/// T_c = alpha / ln(1 + sqrt 2), independent of B.
double critical_temperature(double alpha);

struct EntropyTerms {
  double s_rho;    ///< S(rho)
  double s_rho_a;  ///< S(tr_B rho)
  double s1;       ///< conditional entropy after a z measurement on A
  double s2;       ///< conditional entropy after an x measurement on A
};

struct CorrelationReport {
  double negativity;
  double concurrence;
  double discord;  ///< bits
  double critical_temperature;
  closedform::XStateEntries x_params;
  EntropyTerms entropies;
  double gamma;  ///< sqrt((a - d)^2 + 4 z^2)
  closedform::PartialTransposeEigenvalues pt_eigenvalues;
};

/// Analytic correlation report for the thermal state of `params`:
/// D = S(rho_A) - S(rho) + min{S1, S2}.
CorrelationReport discord_xstate(const ModelParams& params);

struct DiscordSearch {
  int polar_steps = 180;
  int azimuth_steps = 360;
  double tolerance_bits = 1e-7;
};

struct DiscordNumericResult {
  double discord;
  double min_conditional_entropy;
  std::array<double, 3> measurement_axis;  ///< Bloch direction on A
};

/// Mutual information minus the classical correlation maximized over
/// projective measurements on A: grid over Bloch angles, then Nelder-Mead
/// from the best grid point.
DiscordNumericResult discord_numeric_search(const DensityMatrix& rho, const DiscordSearch& search = {});
double discord_numeric(const DensityMatrix& rho, const DiscordSearch& search = {});

/// Conditional entropy S(B | projective measurement of A along `axis`), bits.
double conditional_entropy_after_measurement(const DensityMatrix& rho, const std::array<double, 3>& axis);

/// sum_k (|k><k| x I) rho (|k><k| x I) for the sigma_x eigenbasis |+>, |-> of A.
DensityMatrix post_measurement_state(const DensityMatrix& rho);

}  // namespace qet
