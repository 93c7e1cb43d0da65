#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "qet/closedform.hpp"
#include "qet/protocol.hpp"
#include "test_support.hpp"

using namespace qet;
using qet::test::params;

namespace {

double norm3(const Axis& n) { return std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]); }

}  // namespace

TEST_CASE("alice's measurement") {
  const MeasurementSet m = alice_sx_measurement();
  CHECK_NOTHROW(m.validate());
  CHECK(max_abs_diff(m.operators[0] + m.operators[1], ComplexMatrix::identity(4)) < 1e-15);
  CHECK(m.outcomes[0] == 1);

  MeasurementSet broken = m;
  broken.operators[1] = ComplexMatrix::zero(4);
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  // A product state with A along +x is left untouched.
  const double r = std::numbers::sqrt2 / 2;
  const DensityMatrix plus_zero = DensityMatrix::pure(ComplexVector{r, 0.0, r, 0.0});
  const MeasurementResult out = measure(plus_zero, m, build_hamiltonian(params(0.5, 1.0)));
  CHECK(max_abs_diff(out.state.matrix(), plus_zero.matrix()) < 1e-15);
  CHECK(out.branches.unnormalized[1].max_abs() < 1e-15);
}

TEST_CASE("rotation operator") {
  LoccUnitary u{0.3, kAxisY};
  CHECK_NOTHROW(u.validate());
  for (int k : {1, -1}) {
    const ComplexMatrix op = u.local_operator(k);
    CHECK(max_abs_diff(op * op.adjoint(), identity2()) < 1e-15);
    const ComplexMatrix expect = std::cos(0.3) * identity2() + (kI * (k * std::sin(0.3))) * spin::sy();
    CHECK(max_abs_diff(op, expect) < 1e-15);
  }
  u.axis = {1.0, 1.0, 0.0};
  CHECK_THROWS_AS(u.validate(), std::invalid_argument);
}

TEST_CASE("trivial rotation keeps the measured state") {
  const ModelParams p = params(0.5, 1.0, 0.5);
  const MeasurementResult m = measure(thermal_state(p), alice_sx_measurement(), build_hamiltonian(p));
  const DensityMatrix rho_b = apply_locc(m.branches, LoccUnitary{0.0, kAxisY});
  CHECK(max_abs_diff(rho_b.matrix(), m.state.matrix()) < 1e-15);
}

TEST_CASE("tel curve is p(1 - cos t) - q sin t") {
  const ModelParams p = params(0.6, 1.0, 0.7);
  const TelCurve curve(thermal_state(p), alice_sx_measurement(), build_hamiltonian(p));
  const CurveCoefficients c = curve_coefficients(curve);
  for (int i = 0; i <= 20; ++i) {
    const double t = -std::numbers::pi + i * std::numbers::pi / 10;
    CHECK(std::abs(curve.at_t(t) - closedform::thermal_tel_curve(p, t)) < 1e-13);
    CHECK(std::abs(curve.at_t(t) - (c.p * (1 - std::cos(t)) - c.q * std::sin(t))) < 1e-13);
  }
  // Quadratic form agrees with direct traces on a random axis.
  const auto q = curve.quadratic_form();
  const Axis n{0.48, 0.6, 0.64};
  const double th = 0.37;
  const double v[4] = {std::cos(th), std::sin(th) * n[0], std::sin(th) * n[1], std::sin(th) * n[2]};
  double quad = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) quad += v[i] * q[i][j] * v[j];
  CHECK(std::abs(quad - curve.delta_tel(th, n)) < 1e-14);
}

TEST_CASE("optimal angle branches") {
  CHECK(optimal_angle_from(1.0, 0.0).t0 == 0.0);
  CHECK(optimal_angle_from(0.0, 1.0).t0 == doctest::Approx(std::numbers::pi / 2));
  CHECK(optimal_angle_from(-1.0, 0.0).t0 == doctest::Approx(std::numbers::pi));
  CHECK(optimal_angle_from(1.0, -1.0).theta0 == doctest::Approx(-std::numbers::pi / 8));
  CHECK_THROWS_AS(optimal_angle_from(0.0, 0.0), std::domain_error);
}

TEST_CASE("thermal run at the worked example") {
  const ProtocolTrace r = run_thermal_qet(params(0.5, 1.0, 0.5));
  CHECK(r.delta_tel == doctest::Approx(-0.004528706975).epsilon(1e-9));
  CHECK(r.delta_extract == doctest::Approx(0.004528706975).epsilon(1e-9));
  CHECK(r.delta_inf == doctest::Approx(0.39719523977).epsilon(1e-10));
  CHECK(r.e_after_locc - r.e_initial == doctest::Approx(r.delta_inf + r.delta_tel));
  CHECK(verify_minimum(params(0.5, 1.0, 0.5), r.t0) > 0.0);
  // Local operations on A never change B's reduced state.
  CHECK(max_abs_diff(partial_trace_A(r.rho_after_measurement.matrix()), partial_trace_A(r.rho_initial.matrix())) < 1e-15);
  CHECK(delta_inf(params(0.5, 1.0, 0.5)) == doctest::Approx(r.delta_inf).epsilon(1e-14));
}

TEST_CASE("excited and product runs") {
  const ProtocolTrace ex = run_excited_qet(params(0.5, 1.0));
  CHECK(ex.e_initial == doctest::Approx(1.0));
  CHECK(ex.delta_inf == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(ex.delta_extract == doctest::Approx((1.0 + std::sqrt(1.25)) / 2).epsilon(1e-12));

  const QeeRun qee = run_product_qee(params(1.0, 0.6));
  CHECK(qee.trace.delta_extract == doctest::Approx(0.0830951894845).epsilon(1e-11));
  CHECK(qee.trace.theta_opt < 0.0);
  CHECK(qee.breakdown.e_site_a == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(qee.breakdown.e_site_b) < 1e-15);
  CHECK(std::abs(qee.breakdown.e_interaction) < 1e-15);
  CHECK(std::abs(qee.trace.e_initial) < 1e-15);  // |00> sits at zero with epsilon = B

  CHECK_THROWS_AS(run_product_qee(params(0.5, 1.0)), AssumptionViolation);
  CHECK_THROWS_AS(run_product_qee(params(1.0, 1.0)), AssumptionViolation);
}

TEST_CASE("fibonacci sphere") {
  const auto pts = fibonacci_sphere(500);
  CHECK(pts.size() == 500);
  double mean_z = 0.0;
  for (const Axis& n : pts) {
    CHECK(std::abs(norm3(n) - 1.0) < 1e-14);
    mean_z += n[2];
  }
  CHECK(std::abs(mean_z / 500) < 1e-3);
}

TEST_CASE("general axis optimization finds the y axis") {
  for (double b : {0.3, 1.6}) {
    const ModelParams p = params(b, 1.0, 0.6);
    const AxisOptimization opt = optimize_axis(p, 400);
    CHECK_FALSE(opt.tie);
    CHECK(std::abs(norm3(opt.axis) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(opt.axis[1]) - 1.0) < 1e-6);
    CHECK(opt.theta >= 0.0);
    CHECK(opt.theta <= std::numbers::pi / 2 + 1e-12);
    CHECK(std::abs(opt.delta_tel - closedform::evaluate(p).delta_tel_min) < 1e-10);
    CHECK(opt.record.max_residual() < 1e-9);
    CHECK(opt.simplex_delta_tel >= opt.delta_tel - 1e-12);
  }
}

TEST_CASE("lagrange record is stationary on the y axis only") {
  const ModelParams p = params(0.5, 1.0, 0.5);
  const ProtocolTrace r = run_thermal_qet(p);
  CHECK(lagrange_record(p, r.theta_opt, kAxisY).max_residual() < 1e-9);
  CHECK(lagrange_record(p, r.theta_opt, Axis{0.6, 0.8, 0.0}).max_residual() > 1e-4);
}
