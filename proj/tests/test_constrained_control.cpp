#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <memopt/constrained_control.hpp>
#include <memopt/device_models.hpp>
#include <memopt/errors.hpp>

using namespace memopt;

namespace {

SwitchingTask steep_task(double I_c) {
  SwitchingTask t;
  t.t_i = 0;
  t.t_f = 5;
  t.R_i = 1;
  t.R_f = 100;
  t.compliance = I_c;
  return t;
}

const ChargeMemristor kSteep = ChargeMemristor::linear(1, 100);

}  // namespace

TEST_CASE("pointwise constrained control law") {
  CHECK(pontryagin_control(1.0, 2.0, 10.0) == doctest::Approx(0.25));
  CHECK(pontryagin_control(-1.0, 2.0, 10.0) == doctest::Approx(-0.25));
  CHECK(pontryagin_control(100.0, 2.0, 10.0) == 10.0);   // clipped high
  CHECK(pontryagin_control(-100.0, 2.0, 10.0) == -10.0);  // clipped low
  CHECK_THROWS_AS(pontryagin_control(1.0, 0.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(pontryagin_control(1.0, 2.0, 0.0), std::domain_error);
}

TEST_CASE("two-phase solution: frozen release point and heat") {
  const ConstrainedSolution sol =
      solve_linear_with_compliance(kSteep, steep_task(0.25), 1001, true);
  CHECK(sol.mode == ComplianceMode::clamped_then_interior);
  CHECK(sol.R_c == doctest::Approx(33.753704158811274).epsilon(1e-10));
  CHECK(sol.t_c == doctest::Approx(1.310148166352451).epsilon(1e-10));
  CHECK(sol.Q == doctest::Approx(9.207026129474858).epsilon(1e-12));
  CHECK(constrained_energy(sol) == doctest::Approx(sol.Q).epsilon(1e-12));

  REQUIRE(sol.phase1.has_value());
  REQUIRE(sol.phase2.has_value());
  // Clamped head: the current rides the compliance rail.
  for (double I : sol.phase1->current) CHECK(I == doctest::Approx(0.25).epsilon(1e-12));
  // The control is continuous across the release point.
  CHECK(sol.phase1->current.back() ==
        doctest::Approx(sol.phase2->current.front()).epsilon(1e-8));
  // Quadrature over both phases reproduces the closed-form heat.
  CHECK(joule_heat(*sol.phase1) + joule_heat(*sol.phase2) ==
        doctest::Approx(sol.Q).epsilon(1e-6));
  // Diagnostics expose the rejected cubic root, beyond the physical window.
  REQUIRE(sol.diagnostic_other_root.has_value());
  CHECK(*sol.diagnostic_other_root ==
        doctest::Approx(15.875005166353322).epsilon(1e-9));
  CHECK(*sol.diagnostic_other_root > std::sqrt(100.0));
}

TEST_CASE("loose compliance collapses to the unconstrained optimum") {
  const ConstrainedSolution sol = solve_linear_with_compliance(kSteep, steep_task(2.0), 501);
  CHECK(sol.mode == ComplianceMode::unconstrained);
  CHECK(sol.Q == doctest::Approx(8.871120000000001).epsilon(1e-12));
  CHECK(sol.t_c == doctest::Approx(0.0));
  CHECK(!sol.phase1.has_value());
  REQUIRE(sol.phase2.has_value());
  CHECK(constrained_energy(sol) == doctest::Approx(sol.Q).epsilon(1e-12));
}

TEST_CASE("drift-matched compliance rides the rail the whole way") {
  const ConstrainedSolution sol =
      solve_linear_with_compliance(kSteep, steep_task(0.198), 501);
  CHECK(sol.mode == ComplianceMode::fully_clamped);
  const double expected = 0.198 * 0.198 * 0.5 * (1 + 100) * 5;
  CHECK(sol.Q == doctest::Approx(expected).epsilon(1e-9));
  REQUIRE(sol.phase1.has_value());
  CHECK(!sol.phase2.has_value());
  CHECK(constrained_energy(sol) == doctest::Approx(sol.Q).epsilon(1e-12));
}

TEST_CASE("compliance below the drift requirement is infeasible") {
  CHECK_THROWS_AS(solve_linear_with_compliance(kSteep, steep_task(0.1), 101),
                  infeasible_error);
}

TEST_CASE("constrained solver input validation") {
  SwitchingTask no_limit = steep_task(1.0);
  no_limit.compliance.reset();
  CHECK_THROWS_AS(solve_linear_with_compliance(kSteep, no_limit, 101),
                  std::invalid_argument);

  const ChargeMemristor general =
      ChargeMemristor::from_function([](double q) { return 1 + q * q; });
  CHECK_THROWS_AS(solve_linear_with_compliance(general, steep_task(1.0), 101),
                  std::domain_error);

  const ChargeMemristor falling = ChargeMemristor::linear(200, -100);
  CHECK_THROWS_AS(solve_linear_with_compliance(falling, steep_task(1.0), 101),
                  std::domain_error);
}
