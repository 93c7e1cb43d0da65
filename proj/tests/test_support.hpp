#pragma once

#include <cstdint>
#include <random>

#include "qet/qmatrix.hpp"
#include "qet/xy_model.hpp"

namespace qet::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
};

inline ComplexMatrix random_matrix(Rng& rng, std::size_t dim) {
  return ComplexMatrix::from_fn(dim, [&](std::size_t, std::size_t) {
    const double re = rng.uniform(-1.0, 1.0);
    return Complex{re, rng.uniform(-1.0, 1.0)};
  });
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
  const ComplexMatrix m = random_matrix(rng, dim);
  return 0.5 * (m + m.adjoint());
}

/// G G^dagger / tr, a full-rank random state.
inline DensityMatrix random_state(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = random_matrix(rng, dim);
  ComplexMatrix m = g * g.adjoint();
  m = (1.0 / m.trace().real()) * m;
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

inline ModelParams params(double b, double alpha, double temperature = 1.0) {
  ModelParams p;
  p.b = b;
  p.alpha = alpha;
  p.temperature = temperature;
  return p;
}

}  // namespace qet::test
