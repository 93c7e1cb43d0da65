#include "qet/xy_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qet {

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  const double defect = m_.hermiticity_defect();
  if (defect > kTolerance) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (defect " << defect << ")";
    throw InvalidDensityMatrix(os.str());
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > kTolerance) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " differs from 1";
    throw InvalidDensityMatrix(os.str());
  }
  const HermitianSpectrum spec = hermitian_eig(m_);
  if (spec.eigenvalues.front() <= -kTolerance) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << spec.eigenvalues.front();
    throw InvalidDensityMatrix(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) { return DensityMatrix(projector(psi.normalized())); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

double DensityMatrix::expectation(const ComplexMatrix& op) const { return (op * m_).trace().real(); }

// ---------------------------------------------------------------------------
// Spin frame

namespace spin {
ComplexMatrix sx() { return pauli_x(); }
ComplexMatrix sy() { return -1.0 * pauli_y(); }
ComplexMatrix sz() { return -1.0 * pauli_z(); }
ComplexMatrix splus() { return 0.5 * (sx() + kI * sy()); }
ComplexMatrix sminus() { return 0.5 * (sx() - kI * sy()); }
}  // namespace spin

// ---------------------------------------------------------------------------
// Parameters

void ModelParams::validate_couplings() const {
  if (!std::isfinite(b) || b < 0.0) throw std::invalid_argument("ModelParams: B must be finite and >= 0");
  if (!std::isfinite(alpha) || alpha <= 0.0) throw std::invalid_argument("ModelParams: alpha must be finite and > 0");
  if (!std::isfinite(epsilon)) throw std::invalid_argument("ModelParams: epsilon must be finite");
}

void ModelParams::validate() const {
  validate_couplings();
  if (!std::isfinite(temperature) || temperature <= 0.0) {
    throw std::invalid_argument("ModelParams: temperature must be finite and > 0");
  }
  if (!std::isfinite(beta())) throw std::invalid_argument("ModelParams: beta = 1/T must be finite");
}

std::string_view to_string(LevelLabel label) {
  switch (label) {
    case LevelLabel::k00: return "00";
    case LevelLabel::k11: return "11";
    case LevelLabel::kPlus: return "+";
    case LevelLabel::kMinus: return "-";
  }
  return "?";
}

std::string_view to_string(GroundRegime regime) {
  switch (regime) {
    case GroundRegime::kEntangled: return "entangled";
    case GroundRegime::kProduct: return "product";
    case GroundRegime::kDegenerate: return "degenerate";
  }
  return "?";
}

ComplexVector level_state(LevelLabel label) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (label) {
    case LevelLabel::k00: return ComplexVector::basis(4, 0);
    case LevelLabel::k11: return ComplexVector::basis(4, 3);
    case LevelLabel::kPlus: return ComplexVector{0.0, r, r, 0.0};
    case LevelLabel::kMinus: return ComplexVector{0.0, r, -r, 0.0};
  }
  throw std::logic_error("level_state: unknown label");
}

ComplexMatrix build_hamiltonian(const ModelParams& params) {
  params.validate_couplings();
  using namespace spin;
  const ComplexMatrix zeeman = (params.b / 2.0) * (on_A(sz()) + on_B(sz()));
  const ComplexMatrix hopping = params.alpha * (kron(splus(), sminus()) + kron(sminus(), splus()));
  return zeeman + hopping + params.epsilon * ComplexMatrix::identity(4);
}

GroundRegime ground_regime(double b, double alpha) {
  if (b < alpha) return GroundRegime::kEntangled;
  if (b > alpha) return GroundRegime::kProduct;
  return GroundRegime::kDegenerate;
}

SpectralData spectral_data(const ModelParams& params) {
  params.validate();
  const double b = params.b, alpha = params.alpha, beta = params.beta();
  const std::array<LevelLabel, 4> labels{LevelLabel::k00, LevelLabel::k11, LevelLabel::kPlus, LevelLabel::kMinus};
  const std::array<double, 4> bare{-b, b, alpha, -alpha};

  SpectralData out{};
  for (std::size_t n = 0; n < 4; ++n) {
    int g = 0;
    for (double e : bare) g += (e == bare[n]) ? 1 : 0;
    out.levels[n] = EnergyLevel{labels[n], bare[n] + params.epsilon, g, level_state(labels[n])};
  }

  const double e_min = *std::min_element(bare.begin(), bare.end());
  double shifted_sum = 0.0;
  std::array<double, 4> shifted{};
  for (std::size_t n = 0; n < 4; ++n) {
    shifted[n] = std::exp(-beta * (bare[n] - e_min));
    shifted_sum += shifted[n];
  }
  for (std::size_t n = 0; n < 4; ++n) out.thermal_weights[n] = shifted[n] / shifted_sum;
  out.log_partition_function = -beta * e_min + std::log(shifted_sum);
  out.partition_function = std::exp(out.log_partition_function);

  for (std::size_t n = 0; n < 4; ++n)
    if (bare[n] == e_min) out.ground_labels.push_back(labels[n]);
  out.regime = ground_regime(b, alpha);
  out.ground_degenerate = out.ground_labels.size() > 1;
  return out;
}

DensityMatrix thermal_state(const ModelParams& params) {
  params.validate();
  const HermitianSpectrum spec = hermitian_eig(build_hamiltonian(params));
  const double beta = params.beta();
  const double e_min = spec.eigenvalues.front();

  ComplexMatrix unnormalized = ComplexMatrix::zero(4);
  double z = 0.0;
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    const double w = std::exp(-beta * (spec.eigenvalues[i] - e_min));
    z += w;
    unnormalized = unnormalized + w * projector(spec.eigenvectors[i]);
  }
  ComplexMatrix rho = (1.0 / z) * unnormalized;
  // Remove rounding-level anti-Hermitian residue before validation.
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho);
}

}  // namespace qet
