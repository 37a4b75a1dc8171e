#include <memopt/ideal_optimal.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include <memopt/errors.hpp>
#include <memopt/numerics.hpp>

namespace memopt {

namespace {

// Boundary charges for a task: task-supplied when present, inverted for affine
// models otherwise. Cross-checks a supplied charge against the boundary
// resistance so inconsistent tasks fail loudly.
std::pair<double, double> boundary_charges(const ChargeMemristor& model,
                                           const SwitchingTask& task) {
  double q_i, q_f;
  if (task.q_i && task.q_f) {
    q_i = *task.q_i;
    q_f = *task.q_f;
    const double tol = 1e-6;
    if (std::abs(model.memristance(q_i) - task.R_i) > tol * task.R_i ||
        std::abs(model.memristance(q_f) - task.R_f) > tol * task.R_f)
      throw std::domain_error(
          "boundary_charges: supplied charge endpoints disagree with the boundary "
          "resistances");
  } else if (!model.is_linear()) {
    throw std::domain_error(
        "boundary_charges: general memristance is not inverted; supply q_i and q_f "
        "on the task");
  } else {
    q_i = model.charge_of_resistance(task.R_i);
    q_f = model.charge_of_resistance(task.R_f);
  }
  return {q_i, q_f};
}

Trajectory constant_trajectory(double t_i, double t_f, double q, double R, int n) {
  std::vector<double> time(static_cast<std::size_t>(n));
  const double dt = (t_f - t_i) / (n - 1);
  for (int j = 0; j < n; ++j) time[static_cast<std::size_t>(j)] = t_i + j * dt;
  return Trajectory::from_samples(std::move(time),
                                  std::vector<double>(static_cast<std::size_t>(n), q),
                                  std::vector<double>(static_cast<std::size_t>(n), R),
                                  std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

void require_grid(int n) {
  if (n < 3) throw std::invalid_argument("solver grid must have at least 3 samples");
}

}  // namespace

IdealOptimum solve_linear(const ChargeMemristor& model, const SwitchingTask& task,
                          int n) {
  task.validate();
  require_grid(n);
  if (!model.is_linear())
    throw std::domain_error("solve_linear: model must be affine; use solve_general");
  const double a = model.offset();
  const double b = model.slope();
  const double T = task.duration();

  IdealOptimum out;
  if (task.R_i == task.R_f) {
    const double q = b != 0 ? model.charge_of_resistance(task.R_i) : 0.0;
    out.trajectory = constant_trajectory(task.t_i, task.t_f, q, task.R_i, n);
    out.degenerate = true;
    out.C2 = -out.C1 * task.t_i;
    return out;
  }
  if (b == 0)
    throw std::domain_error(
        "solve_linear: constant memristance cannot realize a resistance change");

  const double W_i = std::pow(task.R_i, 1.5);
  const double W_f = std::pow(task.R_f, 1.5);
  out.C1 = (2.0 / (3.0 * b)) * (W_f - W_i) / T;
  out.C2 = -out.C1 * task.t_i;
  out.Q = out.C1 * out.C1 * T;

  std::vector<double> time(static_cast<std::size_t>(n)), q(time.size()),
      R(time.size()), I(time.size());
  const double dt = T / (n - 1);
  for (int j = 0; j < n; ++j) {
    const double t = task.t_i + j * dt;
    // R^(3/2) interpolates linearly in time along the optimum.
    const double W = (W_i * (task.t_f - t) + W_f * (t - task.t_i)) / T;
    if (!(W > 0))
      throw numerical_error("solve_linear: trajectory would cross zero resistance");
    const double cbrtW = std::cbrt(W);
    time[static_cast<std::size_t>(j)] = t;
    R[static_cast<std::size_t>(j)] = cbrtW * cbrtW;
    q[static_cast<std::size_t>(j)] = (R[static_cast<std::size_t>(j)] - a) / b;
    I[static_cast<std::size_t>(j)] = out.C1 / std::sqrt(R[static_cast<std::size_t>(j)]);
  }
  out.trajectory = Trajectory::from_samples(std::move(time), std::move(q),
                                            std::move(R), std::move(I));
  return out;
}

IdealOptimum solve_general(const ChargeMemristor& model, const SwitchingTask& task,
                           int n, double phi_tol, double invert_tol) {
  task.validate();
  require_grid(n);
  const auto [q_i, q_f] = boundary_charges(model, task);
  const double T = task.duration();

  IdealOptimum out;
  if (q_i == q_f) {
    out.trajectory = constant_trajectory(task.t_i, task.t_f, q_i, task.R_i, n);
    out.degenerate = true;
    return out;
  }

  const double dq = q_f - q_i;
  // Arc-length-like coordinate m(s) = ∫₀ˢ √R(q_i + σ·dq) dσ is strictly
  // increasing; the optimum is uniform in m, i.e. m(s(t)) = m(1)·(t-t_i)/T.
  const auto g = [&](double s) { return std::sqrt(model.memristance(q_i + s * dq)); };
  const double m_total = integrate_adaptive(g, 0.0, 1.0, phi_tol);

  out.C1 = dq * m_total / T;  // Φ(q_f)/T with Φ anchored at q_i
  out.C2 = -out.C1 * task.t_i;
  out.Q = out.C1 * out.C1 * T;

  std::vector<double> time(static_cast<std::size_t>(n)), q(time.size()),
      R(time.size()), I(time.size());
  const double dt = T / (n - 1);
  const double seg_tol = phi_tol / n;

  double s_prev = 0, m_prev = 0;
  for (int j = 0; j < n; ++j) {
    const double t = task.t_i + j * dt;
    double s = s_prev;
    if (j == n - 1) {
      s = 1.0;
    } else if (j > 0) {
      const double target = m_total * (static_cast<double>(j) / (n - 1));
      // Newton on m(s) = target with bisection safeguard on [s_prev, 1].
      double lo = s_prev, hi = 1.0;
      double m_s = m_prev;
      s = std::min(1.0, s_prev + (target - m_prev) / g(s_prev));
      for (int it = 0; it < 100; ++it) {
        m_s = m_prev + integrate_adaptive(g, s_prev, s, seg_tol);
        const double err = m_s - target;
        if (err > 0)
          hi = s;
        else
          lo = s;
        const double step = err / g(s);
        double next = s - step;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) < invert_tol) {
          s = next;
          break;
        }
        s = next;
      }
      m_prev = m_prev + integrate_adaptive(g, s_prev, s, seg_tol);
      s_prev = s;
    }
    const double qj = q_i + s * dq;
    time[static_cast<std::size_t>(j)] = t;
    q[static_cast<std::size_t>(j)] = qj;
    R[static_cast<std::size_t>(j)] = model.memristance(qj);
    I[static_cast<std::size_t>(j)] = out.C1 / std::sqrt(R[static_cast<std::size_t>(j)]);
  }
  out.trajectory = Trajectory::from_samples(std::move(time), std::move(q),
                                            std::move(R), std::move(I));
  return out;
}

BaselineProtocol baseline_constant_current(const ChargeMemristor& model,
                                           const SwitchingTask& task, int n) {
  task.validate();
  require_grid(n);
  const auto [q_i, q_f] = boundary_charges(model, task);
  const double T = task.duration();
  const double I_const = (q_f - q_i) / T;

  std::vector<double> time(static_cast<std::size_t>(n)), q(time.size()), R(time.size()),
      I(time.size(), I_const);
  const double dt = T / (n - 1);
  for (int j = 0; j < n; ++j) {
    const double t = task.t_i + j * dt;
    time[static_cast<std::size_t>(j)] = t;
    q[static_cast<std::size_t>(j)] = q_i + I_const * (t - task.t_i);
    R[static_cast<std::size_t>(j)] = model.memristance(q[static_cast<std::size_t>(j)]);
  }
  BaselineProtocol out;
  out.trajectory = Trajectory::from_samples(std::move(time), std::move(q),
                                            std::move(R), std::move(I));
  // Affine R is linear in time under constant current, so the exact heat is
  // I²·T·(R_i + R_f)/2; other models fall back to quadrature.
  out.Q = model.is_linear()
              ? I_const * I_const * T * 0.5 * (task.R_i + task.R_f)
              : joule_heat(out.trajectory);
  return out;
}

BaselineProtocol baseline_constant_voltage(const ChargeMemristor& model,
                                           const SwitchingTask& task, int n) {
  task.validate();
  require_grid(n);
  const auto [q_i, q_f] = boundary_charges(model, task);
  const double T = task.duration();

  if (q_i == q_f) {
    BaselineProtocol out;
    out.trajectory = constant_trajectory(task.t_i, task.t_f, q_i, task.R_i, n);
    out.Q = 0;
    return out;
  }

  std::vector<double> time(static_cast<std::size_t>(n)), q(time.size()), R(time.size()),
      I(time.size());
  const double dt = T / (n - 1);

  if (model.is_linear() && model.slope() != 0) {
    const double a = model.offset();
    const double b = model.slope();
    const double V = (task.R_f * task.R_f - task.R_i * task.R_i) / (2.0 * b * T);
    for (int j = 0; j < n; ++j) {
      const double t = task.t_i + j * dt;
      // R(t)² grows linearly under constant voltage: R² = R_i² + 2bV·(t - t_i).
      const double rad = task.R_i * task.R_i + 2.0 * b * V * (t - task.t_i);
      if (!(rad > 0))
        throw numerical_error(
            "baseline_constant_voltage: trajectory would cross zero resistance");
      const double Rj = std::sqrt(rad);
      time[static_cast<std::size_t>(j)] = t;
      R[static_cast<std::size_t>(j)] = Rj;
      q[static_cast<std::size_t>(j)] = (Rj - a) / b;
      I[static_cast<std::size_t>(j)] = V / Rj;
    }
    BaselineProtocol out;
    out.trajectory = Trajectory::from_samples(std::move(time), std::move(q),
                                              std::move(R), std::move(I));
    out.Q = V * (task.R_f - task.R_i) / b;  // = V·(q_f - q_i)
    return out;
  }

  // General model: find the V whose charge flow lands on q_f, by bisection over
  // an adaptively expanded bracket; Q = V·(q_f - q_i) holds for any memristance.
  const double dq = q_f - q_i;
  const int substeps = std::max(1, 20000 / (n - 1));
  const auto endpoint = [&](double V) {
    const auto rate = [&](double, double qq) { return V / model.memristance(qq); };
    return integrate_ode(rate, q_i, task.t_i, task.t_f, n, substeps).back() - q_f;
  };
  double V_lo = 0.5 * dq / T * model.memristance(q_i);
  double V_hi = 2.0 * V_lo;
  if (dq > 0) {
    while (endpoint(V_lo) > 0) V_lo *= 0.5;
    while (endpoint(V_hi) < 0) V_hi *= 2.0;
  } else {
    while (endpoint(V_lo) < 0) V_lo *= 0.5;
    while (endpoint(V_hi) > 0) V_hi *= 2.0;
  }
  const double V = find_root_bracketed(endpoint, std::min(V_lo, V_hi),
                                       std::max(V_lo, V_hi),
                                       1e-13 * std::max(1.0, std::abs(V_hi)));
  const auto rate = [&](double, double qq) { return V / model.memristance(qq); };
  const auto qs = integrate_ode(rate, q_i, task.t_i, task.t_f, n, substeps);
  for (int j = 0; j < n; ++j) {
    time[static_cast<std::size_t>(j)] = task.t_i + j * dt;
    q[static_cast<std::size_t>(j)] = qs[static_cast<std::size_t>(j)];
    R[static_cast<std::size_t>(j)] = model.memristance(qs[static_cast<std::size_t>(j)]);
    I[static_cast<std::size_t>(j)] = V / R[static_cast<std::size_t>(j)];
  }
  BaselineProtocol out;
  out.trajectory = Trajectory::from_samples(std::move(time), std::move(q), std::move(R),
                                            std::move(I));
  out.Q = V * dq;
  return out;
}

double optimal_ratio(double rho) {
  if (!(rho > 0) || !std::isfinite(rho))
    throw std::domain_error("optimal_ratio: resistance ratio must be positive, got " +
                            std::to_string(rho));
  if (rho == 1.0) return 1.0;  // degenerate task: both heats vanish
  // expm1 keeps all three factors fully accurate near rho = 1 and preserves the
  // rho <-> 1/rho symmetry to rounding.
  const double L = std::log(rho);
  const double num = std::expm1(1.5 * L);
  return (8.0 / 9.0) * num * num / (std::expm1(2.0 * L) * std::expm1(L));
}

TimeEnergyTradeoff solve_time_energy(const ChargeMemristor& model, double R_i,
                                     double R_f, double w1, double w2, double t_i,
                                     int n) {
  if (!model.is_linear() || model.slope() == 0)
    throw std::domain_error("solve_time_energy: model must be affine with nonzero slope");
  if (!(R_i > 0) || !(R_f > 0))
    throw std::domain_error("solve_time_energy: boundary resistances must be positive");
  if (R_i == R_f)
    throw std::domain_error(
        "solve_time_energy: zero switching distance has no finite-duration optimum");
  if (!(w1 > 0) || !(w2 > 0))
    throw std::domain_error("solve_time_energy: weights must be positive");

  // K = |Φ(q_f) - Φ(q_i)| = (2/(3|b|))·|R_f^(3/2) - R_i^(3/2)|. The free-duration
  // optimum balances the two cost terms: T = K·√(w1/w2), Q = K·√(w2/w1).
  const double K = std::abs((2.0 / (3.0 * model.slope())) *
                            (std::pow(R_f, 1.5) - std::pow(R_i, 1.5)));
  TimeEnergyTradeoff out;
  out.w1 = w1;
  out.w2 = w2;
  out.T_opt = K * std::sqrt(w1 / w2);
  out.Q_opt = K * std::sqrt(w2 / w1);
  SwitchingTask task;
  task.t_i = t_i;
  task.t_f = t_i + out.T_opt;
  task.R_i = R_i;
  task.R_f = R_f;
  out.solution = solve_linear(model, task, n);
  return out;
}

}  // namespace memopt
