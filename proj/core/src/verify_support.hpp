#pragma once

#include <chrono>
#include <cstdint>
#include <random>

#include "qet/qmatrix.hpp"
#include "qet/xy_model.hpp"

namespace qet::verify::detail {

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

inline ModelParams params(double b, double alpha, double temperature) {
  ModelParams p;
  p.b = b;
  p.alpha = alpha;
  p.temperature = temperature;
  return p;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline double linspace(double lo, double hi, int n, int i) {
  return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
}

}  // namespace qet::verify::detail
