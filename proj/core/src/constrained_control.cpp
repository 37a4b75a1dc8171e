#include <memopt/constrained_control.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <memopt/errors.hpp>
#include <memopt/ideal_optimal.hpp>
#include <memopt/numerics.hpp>

namespace memopt {

namespace {

std::vector<double> uniform_times(double t_i, double t_f, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  const double dt = (t_f - t_i) / (n - 1);
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = t_i + dt * j;
  t.back() = t_f;
  return t;
}

// Clamped phase: I = I_c, so q and R move affinely.
Trajectory clamped_segment(double a, double b, double q_start, double I_c,
                           double t_start, double t_end, int n) {
  std::vector<double> time = uniform_times(t_start, t_end, n);
  std::vector<double> q(time.size()), R(time.size()), I(time.size());
  for (std::size_t j = 0; j < time.size(); ++j) {
    q[j] = q_start + I_c * (time[j] - t_start);
    R[j] = a + b * q[j];
    I[j] = I_c;
  }
  return Trajectory::from_samples(std::move(time), std::move(q), std::move(R),
                                  std::move(I));
}

}  // namespace

double pontryagin_control(double p, double R, double I_c) {
  if (!(R > 0)) throw std::domain_error("pontryagin_control: resistance must be positive");
  if (!(I_c > 0)) throw std::domain_error("pontryagin_control: compliance must be positive");
  const double interior = p / (2 * R);
  if (std::abs(interior) < I_c) return interior;
  return p >= 0 ? I_c : -I_c;
}

ConstrainedSolution solve_linear_with_compliance(const ChargeMemristor& model,
                                                 const SwitchingTask& task, int n,
                                                 bool diagnostics) {
  task.validate();
  if (n < 3)
    throw std::invalid_argument("solve_linear_with_compliance: grid needs at least 3 samples");
  if (!model.is_linear())
    throw std::domain_error("solve_linear_with_compliance: affine memristance required");
  if (!task.compliance)
    throw std::invalid_argument(
        "solve_linear_with_compliance: task carries no compliance bound");
  const double a = model.offset();
  const double b = model.slope();
  if (!(b > 0))
    throw std::domain_error("solve_linear_with_compliance: slope b must be positive");
  if (task.R_f < task.R_i)
    throw std::domain_error(
        "solve_linear_with_compliance: only R_f >= R_i is supported (decreasing "
        "resistance under compliance is out of scope)");

  const double I_c = *task.compliance;
  const double T = task.duration();
  const double q_i = model.charge_of_resistance(task.R_i);
  const double q_f = model.charge_of_resistance(task.R_f);
  if (task.q_i && std::abs(*task.q_i - q_i) > 1e-6 * std::max(1.0, std::abs(q_i)))
    throw std::invalid_argument(
        "solve_linear_with_compliance: supplied q_i contradicts R_i under this model");
  if (task.q_f && std::abs(*task.q_f - q_f) > 1e-6 * std::max(1.0, std::abs(q_f)))
    throw std::invalid_argument(
        "solve_linear_with_compliance: supplied q_f contradicts R_f under this model");

  ConstrainedSolution sol;
  sol.I_c = I_c;
  sol.a = a;
  sol.b = b;
  sol.task = task;

  const double drift = (q_f - q_i) / T;  // mean current demanded by the boundaries

  if (std::abs(drift - I_c) <= 1e-9 * I_c) {
    // Boundary drift sits exactly at the bound: the clamp never releases.
    sol.mode = ComplianceMode::fully_clamped;
    sol.t_c = task.t_f;
    sol.R_c = task.R_f;
    sol.Q = I_c * I_c * 0.5 * (task.R_i + task.R_f) * T;
    sol.phase1 = clamped_segment(a, b, q_i, I_c, task.t_i, task.t_f, n);
    return sol;
  }
  if (drift > I_c) {
    std::ostringstream os;
    os << "solve_linear_with_compliance: infeasible task: R_f - R_i = "
       << task.R_f - task.R_i << " kOhm exceeds b*I_c*(t_f - t_i) = " << b * I_c * T
       << " kOhm (mean current " << drift << " mA > I_c = " << I_c << " mA)";
    throw infeasible_error(os.str());
  }

  // Free optimum's peak current sits at t_i (smallest R); the constraint is
  // inactive iff that peak already respects the bound.
  const double W_i = std::pow(task.R_i, 1.5);
  const double W_f = std::pow(task.R_f, 1.5);
  const double peak = 2 * (W_f - W_i) / (3 * b * T * std::sqrt(task.R_i));
  if (peak <= I_c) {
    const IdealOptimum free_opt = solve_linear(model, task, n);
    sol.mode = ComplianceMode::unconstrained;
    sol.t_c = task.t_i;
    sol.R_c = task.R_i;
    sol.Q = free_opt.Q;
    sol.phase2 = free_opt.trajectory;
    return sol;
  }

  // Clamped-then-interior: the release resistance R_c makes the interior arc
  // start exactly at I_c. In x = √R_c the matching condition is the cubic
  // x³ - 3Sx + 2R_f^(3/2) = 0, whose bracket [0, √R_f] is sign-guaranteed:
  // +2R_f^(3/2) at 0 and 3√R_f(R_f - S) < 0 at √R_f under feasibility.
  const double S = task.R_i + b * I_c * T;
  const auto cubic = [S, W_f](double x) { return x * x * x - 3 * S * x + 2 * W_f; };
  const double x_hi = std::sqrt(task.R_f);
  const double x_c = find_root_bracketed(cubic, 0.0, x_hi, 1e-13 * x_hi, 300);
  const double R_c = x_c * x_c;
  const double t_c = task.t_i + (R_c - task.R_i) / (b * I_c);
  if (!(R_c > task.R_i) || !(R_c < task.R_f) || !(t_c > task.t_i) || !(t_c < task.t_f)) {
    std::ostringstream os;
    os << "solve_linear_with_compliance: release point out of range (R_c = " << R_c
       << " kOhm, t_c = " << t_c << " us)";
    throw numerical_error(os.str());
  }

  sol.mode = ComplianceMode::clamped_then_interior;
  sol.t_c = t_c;
  sol.R_c = R_c;
  sol.phase1 = clamped_segment(a, b, q_i, I_c, task.t_i, t_c, n);

  SwitchingTask interior = task;
  interior.t_i = t_c;
  interior.R_i = R_c;
  interior.compliance.reset();
  interior.q_i.reset();  // the affine model re-derives charges at the new boundary
  interior.q_f.reset();
  const IdealOptimum arc = solve_linear(model, interior, n);
  sol.phase2 = arc.trajectory;

  const double W_c = x_c * x_c * x_c;
  sol.Q = I_c * I_c * 0.5 * (task.R_i + R_c) * (t_c - task.t_i) +
          4.0 / (9 * b * b) * (W_f - W_c) * (W_f - W_c) / (task.t_f - t_c);

  if (diagnostics) {
    // Remaining quadratic factor x² + x_c·x + (x_c² - 3S); its positive root
    // must exceed √R_f, i.e. lie outside the admissible window.
    const double disc = 12 * S - 3 * x_c * x_c;
    if (disc >= 0) sol.diagnostic_other_root = 0.5 * (-x_c + std::sqrt(disc));
  }
  return sol;
}

double constrained_energy(const ConstrainedSolution& sol) {
  const double T = sol.task.duration();
  switch (sol.mode) {
    case ComplianceMode::fully_clamped:
      return sol.I_c * sol.I_c * 0.5 * (sol.task.R_i + sol.task.R_f) * T;
    case ComplianceMode::unconstrained: {
      const double W_i = std::pow(sol.task.R_i, 1.5);
      const double W_f = std::pow(sol.task.R_f, 1.5);
      return 4.0 / (9 * sol.b * sol.b) * (W_f - W_i) * (W_f - W_i) / T;
    }
    case ComplianceMode::clamped_then_interior: {
      const double W_c = std::pow(sol.R_c, 1.5);
      const double W_f = std::pow(sol.task.R_f, 1.5);
      return sol.I_c * sol.I_c * 0.5 * (sol.task.R_i + sol.R_c) * (sol.t_c - sol.task.t_i) +
             4.0 / (9 * sol.b * sol.b) * (W_f - W_c) * (W_f - W_c) /
                 (sol.task.t_f - sol.t_c);
    }
  }
  throw std::logic_error("constrained_energy: unknown mode");
}

}  // namespace memopt
