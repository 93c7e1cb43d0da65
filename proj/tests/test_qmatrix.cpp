#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qet/qmatrix.hpp"
#include "test_support.hpp"

using namespace qet;
using qet::test::random_hermitian;
using qet::test::random_matrix;

TEST_CASE("pauli algebra") {
  const ComplexMatrix x = pauli_x(), y = pauli_y(), z = pauli_z(), id = identity2();
  CHECK(max_abs_diff(x * x, id) == 0.0);
  CHECK(max_abs_diff(y * y, id) == 0.0);
  CHECK(max_abs_diff(z * z, id) == 0.0);
  CHECK(max_abs_diff(x * y, kI * z) == 0.0);
  CHECK(max_abs_diff(commutator(y, z), 2.0 * (kI * x)) == 0.0);
  CHECK(z(0, 0) == Complex{1.0, 0.0});
  CHECK(sigma_plus()(0, 1) == Complex{1.0, 0.0});
  CHECK(max_abs_diff(sigma_plus(), 0.5 * (x + kI * y)) == 0.0);
  CHECK(max_abs_diff(sigma_minus(), sigma_plus().adjoint()) == 0.0);
}

TEST_CASE("kron places the first factor on the most significant qubit") {
  const ComplexMatrix zi = kron(pauli_z(), identity2());
  for (std::size_t i = 0; i < 4; ++i) CHECK(zi(i, i).real() == (i < 2 ? 1.0 : -1.0));
  const ComplexMatrix pm = kron(sigma_plus(), sigma_minus());
  // |0><1| x |1><0| = |01><10|
  CHECK(pm(1, 2) == Complex{1.0, 0.0});
  CHECK(pm.max_abs() == 1.0);
  CHECK(max_abs_diff(on_A(pauli_x()), kron(pauli_x(), identity2())) == 0.0);
  CHECK(max_abs_diff(on_B(pauli_x()), kron(identity2(), pauli_x())) == 0.0);
  CHECK_THROWS_AS(kron(ComplexMatrix::identity(4), identity2()), DimensionError);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(ComplexMatrix(3, {1, 0, 0, 0, 1, 0, 0, 0, 1}), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2, {1, 0, 0}), DimensionError);
  CHECK_THROWS_AS(pauli_x() + ComplexMatrix::identity(4), DimensionError);
  CHECK_THROWS_AS(partial_trace_B(pauli_x()), DimensionError);
}

TEST_CASE("partial trace and transpose of a product") {
  qet::test::Rng rng(7);
  const ComplexMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
  const ComplexMatrix ab = kron(a, b);
  CHECK(max_abs_diff(partial_trace_B(ab), b.trace() * a) < 1e-15);
  CHECK(max_abs_diff(partial_trace_A(ab), a.trace() * b) < 1e-15);
  CHECK(max_abs_diff(partial_transpose_B(ab), kron(a, b.transpose())) == 0.0);
}

TEST_CASE("partial transpose of the singlet") {
  const ComplexVector psi{0.0, std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2, 0.0};
  const HermitianSpectrum s = hermitian_eig(partial_transpose_B(projector(psi)));
  CHECK(s.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-14));
  for (std::size_t i = 1; i < 4; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hermitian_eig on a known spectrum") {
  // Rotate diag(-2, 0.5, 0.5, 3) by a fixed unitary: the exp of a Hermitian generator.
  qet::test::Rng rng(11);
  const ComplexMatrix g = random_hermitian(rng, 4);
  const HermitianSpectrum gs = hermitian_eig(g);
  ComplexMatrix u = ComplexMatrix::zero(4);
  for (std::size_t i = 0; i < 4; ++i)
    u = u + std::exp(Complex{0.0, gs.eigenvalues[i]}) * projector(gs.eigenvectors[i]);
  const ComplexMatrix d = ComplexMatrix::diagonal({-2.0, 0.5, 0.5, 3.0});
  const ComplexMatrix h = u * d * u.adjoint();
  const HermitianSpectrum s = hermitian_eig(0.5 * (h + h.adjoint()));
  const double expected[] = {-2.0, 0.5, 0.5, 3.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s.eigenvalues[i] - expected[i]) < 1e-13);
  CHECK(max_abs_diff(s.reconstruct(), h) < 1e-13);
}

TEST_CASE("hermitian_eig conventions") {
  SUBCASE("diagonal input keeps basis vectors, ties in lexicographic order") {
    const HermitianSpectrum s = hermitian_eig(ComplexMatrix::diagonal({1.0, -1.0, 1.0, -1.0}));
    CHECK(s.eigenvalues == std::vector<double>{-1.0, -1.0, 1.0, 1.0});
    // Lexicographic on (re, im) entries: e3 < e1 and e2 < e0.
    CHECK(s.eigenvectors[0][3] == Complex{1.0, 0.0});
    CHECK(s.eigenvectors[1][1] == Complex{1.0, 0.0});
    CHECK(s.eigenvectors[2][2] == Complex{1.0, 0.0});
    CHECK(s.eigenvectors[3][0] == Complex{1.0, 0.0});
  }
  SUBCASE("first significant component is real and positive") {
    qet::test::Rng rng(3);
    const HermitianSpectrum s = hermitian_eig(random_hermitian(rng, 4));
    for (const auto& v : s.eigenvectors) {
      std::size_t k = 0;
      while (std::abs(v[k]) <= 1e-12) ++k;
      CHECK(v[k].imag() == 0.0);
      CHECK(v[k].real() > 0.0);
    }
  }
  SUBCASE("eigenvalues separated by less than 1e-11 are still resolved") {
    const HermitianSpectrum s = hermitian_eig(ComplexMatrix::diagonal({1.0, 2.4e-11, 4.3e-11, 0.0}));
    CHECK(s.eigenvalues[0] == 0.0);
    CHECK(std::abs(s.eigenvalues[1] - 2.4e-11) < 1e-25);
    CHECK(std::abs(s.eigenvalues[2] - 4.3e-11) < 1e-25);
  }
  SUBCASE("rejects non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eig(sigma_plus()), NotHermitianError);
    try {
      hermitian_eig(sigma_plus());
    } catch (const NotHermitianError& e) {
      CHECK(e.max_asymmetry() == 1.0);
    }
  }
}

TEST_CASE("hermitian_eig properties on random input") {
  qet::test::Rng rng(2024);
  for (int k = 0; k < 200; ++k) {
    const std::size_t dim = k % 2 ? 4 : 2;
    const ComplexMatrix h = random_hermitian(rng, dim);
    const HermitianSpectrum s = hermitian_eig(h);
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      sum += s.eigenvalues[i];
      if (i > 0) CHECK(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
      for (std::size_t j = 0; j < dim; ++j)
        CHECK(std::abs(inner(s.eigenvectors[i], s.eigenvectors[j]) - (i == j ? 1.0 : 0.0)) < 1e-13);
    }
    CHECK(std::abs(sum - h.trace().real()) < 1e-12);
    CHECK(max_abs_diff(s.reconstruct(), h) < 1e-12);
  }
}

TEST_CASE("eigvals_hermitian_2x2 matches the general solver") {
  qet::test::Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix h = random_hermitian(rng, 2);
    const auto fast = eigvals_hermitian_2x2(h);
    const HermitianSpectrum s = hermitian_eig(h);
    CHECK(std::abs(fast[0] - s.eigenvalues[0]) < 1e-14);
    CHECK(std::abs(fast[1] - s.eigenvalues[1]) < 1e-14);
  }
}

TEST_CASE("singular values") {
  SUBCASE("diagonal with phases") {
    const auto s = singular_values(ComplexMatrix::diagonal({Complex{0.0, -3.0}, 1e-20, -2.0, 0.0}));
    CHECK(s[0] == 3.0);
    CHECK(s[1] == 2.0);
    CHECK(s[2] == 1e-20);
    CHECK(s[3] == 0.0);
  }
  SUBCASE("invariant under unitaries, small values kept to absolute precision") {
    qet::test::Rng rng(9);
    const HermitianSpectrum g1 = hermitian_eig(random_hermitian(rng, 4));
    const HermitianSpectrum g2 = hermitian_eig(random_hermitian(rng, 4));
    ComplexMatrix u = ComplexMatrix::zero(4), v = ComplexMatrix::zero(4);
    for (std::size_t i = 0; i < 4; ++i) {
      u = u + std::exp(Complex{0.0, g1.eigenvalues[i]}) * projector(g1.eigenvectors[i]);
      v = v + std::exp(Complex{0.0, g2.eigenvalues[i]}) * projector(g2.eigenvectors[i]);
    }
    const auto s = singular_values(u * ComplexMatrix::diagonal({1.0, 0.25, 1e-9, 3e-12}) * v);
    CHECK(std::abs(s[0] - 1.0) < 1e-15);
    CHECK(std::abs(s[1] - 0.25) < 1e-15);
    CHECK(std::abs(s[2] - 1e-9) < 1e-15);
    CHECK(std::abs(s[3] - 3e-12) < 1e-15);
  }
}
