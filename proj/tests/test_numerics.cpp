#include <doctest.h>

#include <cmath>
#include <vector>

#include <memopt/numerics.hpp>

using namespace memopt;

TEST_CASE("quadrature integrates smooth samples to high order") {
  const int n = 1001;
  std::vector<double> s(n);
  const double dt = 3.14159265358979323846 / (n - 1);
  for (int j = 0; j < n; ++j) s[static_cast<std::size_t>(j)] = std::sin(j * dt);
  CHECK(quadrature(s, dt) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("quadrature is exact for cubics") {
  // Simpson's rule integrates polynomials up to degree 3 exactly.
  std::vector<double> s = {0.0, 0.125 * 0.125 * 0.125, 0.25 * 0.25 * 0.25};
  for (std::size_t j = 0; j < 3; ++j) {
    const double t = 0.125 * static_cast<double>(j);
    s[j] = t * t * t;
  }
  CHECK(quadrature(s, 0.125) == doctest::Approx(0.25 * std::pow(0.25, 4)).epsilon(1e-14));
}

TEST_CASE("integrate_adaptive hits analytic values") {
  const double v = integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0, 1);
  CHECK(v == doctest::Approx(std::atan(1.0)).epsilon(1e-11));
  const double w = integrate_adaptive([](double x) { return std::exp(x); }, -1, 2);
  CHECK(w == doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-11));
}

TEST_CASE("find_root_bracketed locates a transcendental root") {
  const double r = find_root_bracketed([](double x) { return std::cos(x); }, 1, 2);
  CHECK(r == doctest::Approx(std::acos(0.0)).epsilon(1e-11));
}

TEST_CASE("find_root_bracketed rejects a non-straddling bracket") {
  CHECK_THROWS(find_root_bracketed([](double x) { return 1.0 + x * x; }, 0, 1));
}

TEST_CASE("integrate_ode reproduces the exponential") {
  const auto y = integrate_ode([](double, double v) { return v; }, 1.0, 0.0, 1.0, 101, 10);
  REQUIRE(y.size() == 101);
  CHECK(y.back() == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
}

TEST_CASE("discrete path minimizer approaches the variational heat") {
  // Affine memristance, swing 1 -> 10 over unit time; the variational minimum
  // is (4/9) (R_f^{3/2} - R_i^{3/2})^2 / T.
  const auto R = [](double q) { return 1.0 + q; };
  const double exact = 4.0 / 9.0 * std::pow(std::pow(10.0, 1.5) - 1.0, 2.0);
  const DiscretePath path = minimize_discrete_path(R, 0.0, 9.0, 0.0, 1.0, 65);
  CHECK(path.Q == doctest::Approx(exact).epsilon(2e-3));
  CHECK(path.nodes.front() == 0.0);
  CHECK(path.nodes.back() == 9.0);
}

TEST_CASE("clamped prefix fraction sees a rate-limited head segment") {
  const auto R = [](double q) { return 1.0 + 100.0 * q; };
  const DiscretePath path = minimize_discrete_path(R, 0.0, 0.99, 0.0, 5.0, 96, 0.25);
  const double frac = clamped_prefix_fraction(path, 0.25);
  CHECK(frac > 0.1);
  CHECK(frac < 0.5);
  // No interior node may exceed the compliance slope.
  const double dt = path.times[1] - path.times[0];
  for (std::size_t j = 1; j < path.nodes.size(); ++j)
    CHECK(std::fabs(path.nodes[j] - path.nodes[j - 1]) / dt <= 0.25 * (1 + 1e-9));
}
