#pragma once

// Two-qubit XY model in a transverse field:
//
//   H = (B/2)(sz x I + I x sz) + alpha (s+ x s- + s- x s+) + epsilon I
//
// Spin operators are written in the frame where |0> is spin-down, i.e.
// sz|0> = -|0>. Relative to the standard Pauli matrices of qmatrix.hpp this
// is sx = X, sy = -Y, sz = -Z, which keeps [sx, sy] = 2i sz. In this frame
// the level table reads E(|00>) = -B, E(|11>) = +B, E(psi+) = alpha,
// E(psi-) = -alpha.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qet/qmatrix.hpp"

namespace qet {

/// Thrown when a matrix fails the density-matrix invariants.
class InvalidDensityMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hermitian, positive semidefinite, unit-trace 4x4 (or 2x2) matrix.
///
/// Validated at construction: hermiticity defect <= 1e-12, smallest
/// eigenvalue > -1e-12, |tr - 1| <= 1e-12.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Re tr(O rho)
  double expectation(const ComplexMatrix& op) const;

 private:
  ComplexMatrix m_;
};

namespace spin {
ComplexMatrix sx();
ComplexMatrix sy();
ComplexMatrix sz();
ComplexMatrix splus();
ComplexMatrix sminus();
}  // namespace spin

/// Physical parameters of one experiment. Energies and temperature share a
/// unit; k_B = 1.
struct ModelParams {
  double b = 0.0;            ///< magnetic field, >= 0
  double alpha = 1.0;        ///< coupling, > 0
  double epsilon = 0.0;      ///< constant offset added to H
  double temperature = 1.0;  ///< > 0

  double beta() const { return 1.0 / temperature; }

  /// Checks b, alpha, epsilon. Throws std::invalid_argument.
  void validate_couplings() const;
  /// validate_couplings() plus a finite, strictly positive temperature.
  void validate() const;
};

enum class LevelLabel { k00, k11, kPlus, kMinus };

std::string_view to_string(LevelLabel label);

enum class GroundRegime {
  kEntangled,   ///< B < alpha, ground state psi-
  kProduct,     ///< B > alpha, ground state |00>
  kDegenerate,  ///< B == alpha, psi- and |00> share the ground energy
};

std::string_view to_string(GroundRegime regime);

struct EnergyLevel {
  LevelLabel label;
  double energy;    ///< includes epsilon
  int degeneracy;   ///< g(E_n) for this level's energy
  ComplexVector state;
};

struct SpectralData {
  std::array<EnergyLevel, 4> levels;   ///< order: 00, 11, +, -
  double partition_function;           ///< Z of the offset-free Hamiltonian (may overflow to inf)
  double log_partition_function;       ///< ln Z, finite for any valid temperature
  std::array<double, 4> thermal_weights;  ///< p_n, same order as levels
  std::vector<LevelLabel> ground_labels;
  GroundRegime regime;
  bool ground_degenerate;
};

/// Labelled eigenstates: |00>, |11>, psi+ = (|01>+|10>)/sqrt2, psi- = (|01>-|10>)/sqrt2.
ComplexVector level_state(LevelLabel label);

ComplexMatrix build_hamiltonian(const ModelParams& params);

/// Regime from the field/coupling ratio; B == alpha exactly is degenerate.
GroundRegime ground_regime(double b, double alpha);

SpectralData spectral_data(const ModelParams& params);

/// Gibbs state exp(-beta H)/tr exp(-beta H), built from the numerical
/// eigendecomposition of build_hamiltonian(params) with the exponent shifted
/// by the lowest eigenvalue.
DensityMatrix thermal_state(const ModelParams& params);

}  // namespace qet
