#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "qet/xy_model.hpp"
#include "test_support.hpp"

using namespace qet;
using qet::test::params;

namespace {

// Written straight from the level table in the standard basis:
// diag(-B, 0, 0, B) + alpha (|01><10| + |10><01|) + epsilon.
ComplexMatrix hamiltonian_oracle(double b, double alpha, double epsilon) {
  return ComplexMatrix(4, {-b + epsilon, 0, 0, 0,
                           0, epsilon, alpha, 0,
                           0, alpha, epsilon, 0,
                           0, 0, 0, b + epsilon});
}

// Gibbs state entries from the partition function, no diagonalization.
ComplexMatrix thermal_oracle(double b, double alpha, double t) {
  const double beta = 1.0 / t;
  const double z = 2.0 * std::cosh(beta * b) + 2.0 * std::cosh(beta * alpha);
  const double w = std::cosh(beta * alpha) / z, c = -std::sinh(beta * alpha) / z;
  return ComplexMatrix(4, {std::exp(beta * b) / z, 0, 0, 0,
                           0, w, c, 0,
                           0, c, w, 0,
                           0, 0, 0, std::exp(-beta * b) / z});
}

}  // namespace

TEST_CASE("spin operators in the spin-down frame") {
  CHECK(max_abs_diff(spin::sz(), -1.0 * pauli_z()) == 0.0);
  CHECK(max_abs_diff(spin::sy(), -1.0 * pauli_y()) == 0.0);
  CHECK(max_abs_diff(spin::sx(), pauli_x()) == 0.0);
  CHECK(max_abs_diff(commutator(spin::sx(), spin::sy()), 2.0 * (kI * spin::sz())) == 0.0);
  // s+ raises spin-down |0> to spin-up |1>.
  CHECK(spin::splus()(1, 0) == Complex{1.0, 0.0});
  CHECK(max_abs_diff(spin::sminus(), spin::splus().adjoint()) == 0.0);
}

TEST_CASE("hamiltonian matches the level table") {
  for (double b : {0.0, 0.5, 1.0, 3.0})
    for (double alpha : {0.2, 1.0})
      for (double eps : {0.0, 0.7}) {
        ModelParams p = params(b, alpha);
        p.epsilon = eps;
        CHECK(max_abs_diff(build_hamiltonian(p), hamiltonian_oracle(b, alpha, eps)) < 1e-15);
      }
}

TEST_CASE("level states are eigenvectors with the tabulated energies") {
  const ModelParams p = params(0.4, 1.3);
  const ComplexMatrix h = build_hamiltonian(p);
  const SpectralData s = spectral_data(p);
  const double expected[] = {-0.4, 0.4, 1.3, -1.3};
  for (std::size_t i = 0; i < 4; ++i) {
    const EnergyLevel& lv = s.levels[i];
    CHECK(lv.energy == doctest::Approx(expected[i]).epsilon(1e-15));
    CHECK(lv.degeneracy == 1);
    const ComplexVector hv = h.apply(lv.state);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(hv[k] - lv.energy * lv.state[k]) < 1e-15);
  }
  CHECK(s.levels[0].label == LevelLabel::k00);
  CHECK(s.levels[3].label == LevelLabel::kMinus);
  CHECK(level_state(LevelLabel::kMinus)[1].real() == doctest::Approx(std::numbers::sqrt2 / 2));
  CHECK(level_state(LevelLabel::kMinus)[2].real() == doctest::Approx(-std::numbers::sqrt2 / 2));
}

TEST_CASE("degeneracies and regimes") {
  CHECK(ground_regime(0.5, 1.0) == GroundRegime::kEntangled);
  CHECK(ground_regime(1.5, 1.0) == GroundRegime::kProduct);
  CHECK(ground_regime(1.0, 1.0) == GroundRegime::kDegenerate);

  const SpectralData tie = spectral_data(params(1.0, 1.0));
  CHECK(tie.ground_degenerate);
  CHECK(tie.ground_labels.size() == 2);
  CHECK(tie.levels[0].degeneracy == 2);
  CHECK(tie.levels[1].degeneracy == 2);  // |11> ties with psi+

  const SpectralData zero_field = spectral_data(params(0.0, 1.0));
  CHECK(zero_field.levels[0].degeneracy == 2);  // |00>, |11> at 0
  CHECK(zero_field.regime == GroundRegime::kEntangled);
  CHECK_FALSE(zero_field.ground_degenerate);
  CHECK(to_string(GroundRegime::kProduct) == "product");
}

TEST_CASE("thermal state agrees with the closed-form Gibbs state") {
  for (double t : {0.05, 0.3, 1.0, 10.0})
    for (double b : {0.0, 0.5, 1.0, 2.0}) {
      CAPTURE(t);
      CAPTURE(b);
      const DensityMatrix rho = thermal_state(params(b, 1.0, t));
      CHECK(max_abs_diff(rho.matrix(), thermal_oracle(b, 1.0, t)) < 1e-13);
      const SpectralData s = spectral_data(params(b, 1.0, t));
      for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(s.thermal_weights[i] - std::real(inner(s.levels[i].state,
                                                               rho.matrix().apply(s.levels[i].state)))) < 1e-13);
    }
}

TEST_CASE("epsilon shifts energies but not the thermal state") {
  ModelParams p = params(0.5, 1.0, 0.5);
  const DensityMatrix base = thermal_state(p);
  p.epsilon = 3.0;
  CHECK(max_abs_diff(thermal_state(p).matrix(), base.matrix()) < 1e-14);
  CHECK(spectral_data(p).levels[0].energy == doctest::Approx(2.5));
}

TEST_CASE("low temperature selects the ground state") {
  const DensityMatrix rho = thermal_state(params(0.5, 1.0, 1e-3));
  const ComplexVector psi_minus = level_state(LevelLabel::kMinus);
  CHECK(std::real(inner(psi_minus, rho.matrix().apply(psi_minus))) == doctest::Approx(1.0).epsilon(1e-12));

  const DensityMatrix product = thermal_state(params(2.0, 1.0, 1e-3));
  CHECK(product(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));

  const SpectralData cold = spectral_data(params(0.5, 1.0, 1e-6));
  CHECK(std::isfinite(cold.log_partition_function));
  CHECK(cold.log_partition_function == doctest::Approx(1e6).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(params(-0.1, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(0.5, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(0.5, 1.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(0.5, 1.0, std::numeric_limits<double>::infinity()).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(std::nan(""), 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(thermal_state(params(0.5, 1.0, -1.0)), std::invalid_argument);
  CHECK_NOTHROW(params(0.0, 1.0, 2.0).validate());
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(4));
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(4)), InvalidDensityMatrix);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal({1.5, -0.5})), InvalidDensityMatrix);
  CHECK_THROWS_AS(DensityMatrix(sigma_plus() + ComplexMatrix::diagonal({0.5, 0.5})), InvalidDensityMatrix);
  const DensityMatrix up = DensityMatrix::pure(ComplexVector{0.0, 1.0});
  CHECK(up.expectation(spin::sz()) == 1.0);
}
