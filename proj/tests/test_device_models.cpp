#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <memopt/device_models.hpp>

using namespace memopt;

TEST_CASE("affine charge-controlled memristance") {
  const ChargeMemristor m = ChargeMemristor::linear(1, 2);
  CHECK(m.is_linear());
  CHECK(m.offset() == 1.0);
  CHECK(m.slope() == 2.0);
  CHECK(m.memristance(0.0) == 1.0);
  CHECK(m.memristance(3.0) == 7.0);
  CHECK(m.charge_of_resistance(7.0) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("general charge-controlled memristance") {
  const ChargeMemristor m =
      ChargeMemristor::from_function([](double q) { return (1 + q) * (1 + q); });
  CHECK(!m.is_linear());
  CHECK(m.memristance(2.0) == 9.0);
  CHECK_THROWS_AS(m.memristance(-1.0), std::domain_error);  // R would be <= 0
}

TEST_CASE("threshold model validation and kinetics") {
  ThresholdMemristiveModel m;
  m.R_on = 1;
  m.R_off = 100;
  m.k = 0.5;
  m.V_on = 1;
  m.V_off = -1;
  m.validate();
  CHECK(m.delta_R() == 99.0);
  CHECK(m.memristance(0.0) == 1.0);
  CHECK(m.memristance(1.0) == 100.0);
  CHECK(m.x_of_resistance(100.0) == doctest::Approx(1.0).epsilon(1e-14));

  // Dead zone: no drift between the thresholds.
  CHECK(m.state_rate(0.5, 0.0) == 0.0);
  CHECK(m.state_rate(0.5, 0.999) == 0.0);
  CHECK(m.state_rate(0.5, -0.999) == 0.0);
  // Above threshold the rate is k(V - V_on).
  CHECK(m.state_rate(0.5, 3.0) == doctest::Approx(1.0).epsilon(1e-14));

  ThresholdMemristiveModel bad = m;
  bad.R_on = -1;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = m;
  bad.k = 0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("switching task validation") {
  SwitchingTask t;
  t.t_i = 0;
  t.t_f = 1;
  t.R_i = 1;
  t.R_f = 10;
  t.validate();
  CHECK(t.duration() == 1.0);

  SwitchingTask bad = t;
  bad.t_f = 0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = t;
  bad.R_i = 0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = t;
  bad.compliance = -1;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("trajectory assembly derives voltage and power") {
  std::vector<double> t = {0, 0.5, 1};
  std::vector<double> q = {0, 1, 2};
  std::vector<double> R = {1, 2, 3};
  std::vector<double> I = {2, 2, 2};
  const Trajectory tr = Trajectory::from_samples(t, q, R, I);
  CHECK(tr.voltage[1] == 4.0);   // V = R I
  CHECK(tr.power[2] == 12.0);    // P = V I = R I^2
  CHECK(tr.dt() == doctest::Approx(0.5));
  CHECK(tr.all_regime_valid());
  validate_trajectory(tr);
}

TEST_CASE("trajectory invariants reject malformed input") {
  std::vector<double> bad_t = {0, 0.4, 1};  // non-uniform
  std::vector<double> q = {0, 1, 2};
  std::vector<double> R = {1, 2, 3};
  std::vector<double> I = {2, 2, 2};
  CHECK_THROWS_AS(Trajectory::from_samples(bad_t, q, R, I), std::invalid_argument);

  std::vector<double> t = {0, 0.5, 1};
  std::vector<double> negR = {1, -2, 3};
  CHECK_THROWS_AS(Trajectory::from_samples(t, q, negR, I), std::invalid_argument);
}

TEST_CASE("joule heat of elementary protocols") {
  // Constant current through a constant resistance: Q = I^2 R T exactly.
  const int n = 101;
  std::vector<double> t(n), q(n), R(n, 2.0), I(n, 3.0);
  for (int j = 0; j < n; ++j) {
    t[static_cast<std::size_t>(j)] = 0.01 * j;
    q[static_cast<std::size_t>(j)] = 3.0 * 0.01 * j;
  }
  const Trajectory tr = Trajectory::from_samples(t, q, R, I);
  CHECK(joule_heat(tr) == doctest::Approx(9.0 * 2.0 * 1.0).epsilon(1e-13));

  std::vector<double> I0(n, 0.0), q0(n, 5.0);
  const Trajectory idle = Trajectory::from_samples(t, q0, R, I0);
  CHECK(joule_heat(idle) == 0.0);
}

TEST_CASE("energy report handles degenerate tasks") {
  const EnergyReport r = make_energy_report(0.0, 0.0, 0.0, 0.0);
  CHECK(r.ratio_vs_constant_current == 1.0);
  CHECK(r.ratio_vs_constant_voltage == 1.0);
  CHECK(!r.oracle_Q.has_value());

  const EnergyReport s = make_energy_report(8.0, 10.0, 9.0, 8.0 * (1 + 1e-9), 8.1);
  CHECK(s.ratio_vs_constant_current == doctest::Approx(0.8));
  CHECK(s.ratio_vs_constant_voltage == doctest::Approx(8.0 / 9.0));
  CHECK(s.quadrature_residual == doctest::Approx(1e-9).epsilon(1e-3));
  REQUIRE(s.oracle_residual.has_value());
  CHECK(*s.oracle_residual == doctest::Approx(0.0125).epsilon(1e-6));
}
