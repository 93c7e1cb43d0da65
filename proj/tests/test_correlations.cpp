#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qet/correlations.hpp"
#include "test_support.hpp"

using namespace qet;
using qet::test::params;

namespace {

ComplexVector singlet() {
  const double r = std::numbers::sqrt2 / 2;
  return ComplexVector{0.0, r, -r, 0.0};
}

DensityMatrix werner(double p) {
  return DensityMatrix(p * projector(singlet()) + (0.25 * (1.0 - p)) * ComplexMatrix::identity(4));
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Known closed form for the Werner family.
double werner_discord(double p) {
  return 0.25 * xlog2x(1.0 - p) - 0.5 * xlog2x(1.0 + p) + 0.25 * xlog2x(1.0 + 3.0 * p);
}

}  // namespace

TEST_CASE("entropies") {
  const std::vector<double> w{0.5, 0.25, 0.25, 0.0};
  CHECK(shannon_entropy_bits(w) == doctest::Approx(1.5));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) == doctest::Approx(2.0));
  CHECK(von_neumann_entropy(DensityMatrix::pure(singlet())) < 1e-12);
  CHECK(von_neumann_entropy(partial_trace_B(projector(singlet()))) == doctest::Approx(1.0));
}

TEST_CASE("bell state") {
  const DensityMatrix bell = DensityMatrix::pure(singlet());
  const NegativityResult n = negativity(bell);
  CHECK(n.negativity == doctest::Approx(0.5));
  CHECK(n.pt_eigenvalues[0] == doctest::Approx(-0.5));
  CHECK(concurrence(bell) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(discord_numeric(bell) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("product states carry nothing") {
  const ComplexMatrix a = ComplexMatrix::diagonal({0.3, 0.7});
  const ComplexMatrix b(2, {0.6, Complex{0.1, 0.2}, Complex{0.1, -0.2}, 0.4});
  const DensityMatrix ab(kron(a, b));
  CHECK(negativity(ab).negativity == 0.0);
  CHECK(concurrence(ab) < 1e-15);
  CHECK(discord_numeric(ab) < 1e-7);
}

TEST_CASE("werner states") {
  for (double p : {0.1, 1.0 / 3.0 + 0.05, 0.6, 0.9}) {
    CAPTURE(p);
    const DensityMatrix rho = werner(p);
    CHECK(concurrence(rho) == doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 2.0)).epsilon(1e-12).scale(1.0));
    CHECK(negativity(rho).negativity == doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 4.0)).scale(1.0));
    const DiscordNumericResult d = discord_numeric_search(rho);
    CHECK(std::abs(d.discord - werner_discord(p)) < 1e-6);
  }
}

TEST_CASE("x-state discord matches the numeric search") {
  for (double t : {0.1, 0.5, 1.5})
    for (double b : {0.2, 1.0, 2.5}) {
      const ModelParams p = params(b, 1.0, t);
      const CorrelationReport r = discord_xstate(p);
      CHECK(std::abs(r.discord - discord_numeric(thermal_state(p))) < 1e-5);
      CHECK(r.discord >= 0.0);
      CHECK(std::abs(r.concurrence - concurrence(thermal_state(p))) < 1e-10);
      CHECK(r.critical_temperature == doctest::Approx(critical_temperature(1.0)));
      CHECK(r.gamma <= 1.0 + 1e-15);
      const double s = std::min(r.entropies.s1, r.entropies.s2);
      CHECK(r.discord == doctest::Approx(r.entropies.s_rho_a - r.entropies.s_rho + s));
    }
}

TEST_CASE("conditional entropy along an axis") {
  // Singlet: measuring A along any axis leaves B pure.
  const DensityMatrix bell = DensityMatrix::pure(singlet());
  for (const std::array<double, 3>& n :
       {std::array<double, 3>{1, 0, 0}, std::array<double, 3>{0, 0.6, 0.8}})
    CHECK(std::abs(conditional_entropy_after_measurement(bell, n)) < 1e-12);
  CHECK(conditional_entropy_after_measurement(DensityMatrix::maximally_mixed(4), {0, 0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("post-measurement state") {
  qet::test::Rng rng(17);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix rho = qet::test::random_state(rng, 4);
    const DensityMatrix once = post_measurement_state(rho);
    CHECK(max_abs_diff(post_measurement_state(once).matrix(), once.matrix()) < 1e-15);
    CHECK(max_abs_diff(partial_trace_A(once.matrix()), partial_trace_A(rho.matrix())) < 1e-15);
    // Classical on A in the x basis: zero discord.
    CHECK(discord_numeric(once) < 1e-7);
  }
}
