#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace qet::detail {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x;
  double value;
  int iterations;
};

/// Plain Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// Stops when both the spread of simplex values and the largest vertex
/// distance from the best vertex fall below the tolerances.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, std::array<double, N> start, double step, double ftol, double xtol,
                             int max_iterations = 2000) {
  std::array<std::array<double, N>, N + 1> pts{};
  std::array<double, N + 1> vals{};
  pts[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

  auto combine = [](const std::array<double, N>& a, const std::array<double, N>& b, double t) {
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
  };

  int it = 0;
  for (; it < max_iterations; ++it) {
    std::array<std::size_t, N + 1> idx{};
    for (std::size_t i = 0; i <= N; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    auto sp = pts;
    auto sv = vals;
    for (std::size_t i = 0; i <= N; ++i) {
      pts[i] = sp[idx[i]];
      vals[i] = sv[idx[i]];
    }

    double xspread = 0.0;
    for (std::size_t i = 1; i <= N; ++i)
      for (std::size_t k = 0; k < N; ++k) xspread = std::max(xspread, std::abs(pts[i][k] - pts[0][k]));
    if (vals[N] - vals[0] <= ftol && xspread <= xtol) break;

    std::array<double, N> centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);

    const auto reflected = combine(centroid, pts[N], -1.0);
    const double fr = f(reflected);
    if (fr < vals[0]) {
      const auto expanded = combine(centroid, pts[N], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[N] = expanded;
        vals[N] = fe;
      } else {
        pts[N] = reflected;
        vals[N] = fr;
      }
      continue;
    }
    if (fr < vals[N - 1]) {
      pts[N] = reflected;
      vals[N] = fr;
      continue;
    }
    const bool outside = fr < vals[N];
    const auto contracted = outside ? combine(centroid, reflected, 0.5) : combine(centroid, pts[N], 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, vals[N])) {
      pts[N] = contracted;
      vals[N] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= N; ++i) {
      pts[i] = combine(pts[0], pts[i], 0.5);
      vals[i] = f(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= N; ++i)
    if (vals[i] < vals[best]) best = i;
  return {pts[best], vals[best], it};
}

}  // namespace qet::detail
