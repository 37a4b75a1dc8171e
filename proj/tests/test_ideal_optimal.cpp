#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <memopt/device_models.hpp>
#include <memopt/ideal_optimal.hpp>

using namespace memopt;

namespace {
SwitchingTask unit_task(double R_i, double R_f, double T = 1.0) {
  SwitchingTask t;
  t.t_i = 0;
  t.t_f = T;
  t.R_i = R_i;
  t.R_f = R_f;
  return t;
}
}  // namespace

TEST_CASE("affine optimum: frozen values for the 1 -> 100 kOhm unit-time task") {
  const ChargeMemristor m = ChargeMemristor::linear(1, 1);
  const IdealOptimum opt = solve_linear(m, unit_task(1, 100), 1001);
  CHECK(opt.Q == doctest::Approx(443556.0).epsilon(1e-12));
  CHECK(opt.C1 == doctest::Approx(666.0).epsilon(1e-12));
  CHECK(!opt.degenerate);

  // R^{3/2} is affine in time: mid-sample closes the chord exactly.
  const double mid = std::pow(opt.trajectory.resistance[500], 1.5);
  CHECK(mid == doctest::Approx(0.5 * (1.0 + std::pow(100.0, 1.5))).epsilon(1e-9));

  // Optimal current tapers by sqrt(R_f/R_i) = 10.
  CHECK(opt.trajectory.current.front() / opt.trajectory.current.back() ==
        doctest::Approx(10.0).epsilon(1e-9));

  CHECK(opt.trajectory.resistance.front() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(opt.trajectory.resistance.back() == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("affine baselines: equal heats, frozen values") {
  const ChargeMemristor m = ChargeMemristor::linear(1, 1);
  const SwitchingTask task = unit_task(1, 100);
  const BaselineProtocol cc = baseline_constant_current(m, task, 101);
  const BaselineProtocol cv = baseline_constant_voltage(m, task, 101);
  CHECK(cc.Q == doctest::Approx(494950.5).epsilon(1e-12));
  CHECK(cv.Q == doctest::Approx(494950.5).epsilon(1e-12));
  CHECK(cv.trajectory.voltage.front() == doctest::Approx(4999.5).epsilon(1e-12));
  CHECK(cc.trajectory.current.front() == doctest::Approx(99.0).epsilon(1e-12));
}

TEST_CASE("optimal_ratio: frozen points and basic shape") {
  CHECK(optimal_ratio(1.0) == 1.0);
  CHECK(optimal_ratio(2.0) == doctest::Approx(0.9905617038541097).epsilon(1e-13));
  CHECK(optimal_ratio(0.5) == doctest::Approx(0.9905617038541097).epsilon(1e-13));
  CHECK(optimal_ratio(100.0) == doctest::Approx(0.896162343507078).epsilon(1e-13));
  CHECK_THROWS_AS(optimal_ratio(0.0), std::domain_error);
  CHECK_THROWS_AS(optimal_ratio(-2.0), std::domain_error);
}

TEST_CASE("general model: quadratic memristance frozen optimum") {
  const ChargeMemristor m =
      ChargeMemristor::from_function([](double q) { return (1 + q) * (1 + q); });
  SwitchingTask task = unit_task(1, 9);
  task.q_i = 0;
  task.q_f = 2;
  const IdealOptimum opt = solve_general(m, task, 1001);
  CHECK(opt.Q == doctest::Approx(16.0).epsilon(1e-8));
  CHECK(opt.C1 == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(opt.trajectory.state.back() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("degenerate task returns a flagged constant trajectory") {
  const ChargeMemristor m = ChargeMemristor::linear(1, 1);
  const IdealOptimum opt = solve_linear(m, unit_task(5, 5), 101);
  CHECK(opt.degenerate);
  CHECK(opt.Q == 0.0);
  for (double I : opt.trajectory.current) CHECK(I == 0.0);
}

TEST_CASE("reversed switching direction dissipates the same optimal heat") {
  const ChargeMemristor m = ChargeMemristor::linear(0.5, 2);
  const IdealOptimum fwd = solve_linear(m, unit_task(1, 64, 2.5), 501);
  const IdealOptimum rev = solve_linear(m, unit_task(64, 1, 2.5), 501);
  CHECK(fwd.Q == doctest::Approx(rev.Q).epsilon(1e-12));
  CHECK(rev.trajectory.current.front() < 0);
}

TEST_CASE("time-energy tradeoff: balance, frozen values and weight scaling") {
  const ChargeMemristor m = ChargeMemristor::linear(1, 1);
  const TimeEnergyTradeoff unit = solve_time_energy(m, 1, 100, 1, 1, 0, 101);
  CHECK(unit.T_opt == doctest::Approx(666.0).epsilon(1e-12));
  CHECK(unit.Q_opt == doctest::Approx(666.0).epsilon(1e-12));

  const TimeEnergyTradeoff heavy = solve_time_energy(m, 1, 100, 4, 1, 0, 101);
  CHECK(heavy.T_opt == doctest::Approx(1332.0).epsilon(1e-12));
  CHECK(heavy.Q_opt == doctest::Approx(333.0).epsilon(1e-12));
  CHECK(heavy.w1 * heavy.Q_opt == doctest::Approx(heavy.w2 * heavy.T_opt).epsilon(1e-12));

  CHECK_THROWS_AS(solve_time_energy(m, 1, 100, 0, 1, 0, 101), std::domain_error);
}

TEST_CASE("invalid tasks are rejected") {
  const ChargeMemristor m = ChargeMemristor::linear(1, 1);
  CHECK_THROWS_AS(solve_linear(m, unit_task(0, 100), 101), std::domain_error);
  CHECK_THROWS_AS(solve_linear(m, unit_task(1, -3), 101), std::domain_error);
  CHECK_THROWS_AS(solve_linear(m, unit_task(1, 100), 2), std::invalid_argument);
  const ChargeMemristor gen =
      ChargeMemristor::from_function([](double q) { return 1 + q * q; });
  CHECK_THROWS_AS(solve_linear(gen, unit_task(1, 100), 101), std::domain_error);
}
