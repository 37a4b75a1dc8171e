#include <memopt/memristive_optimal.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <memopt/errors.hpp>
#include <memopt/numerics.hpp>

namespace memopt {

namespace {

void require_grid(int n) {
  if (n < 3) throw std::invalid_argument("memristive_optimal: grid needs at least 3 samples");
}

// The V > V_on branch drives x (and hence R) upward; the closed forms and
// baselines below are derived on that branch only.
void require_on_branch(const ThresholdMemristiveModel& m, const SwitchingTask& task) {
  m.validate();
  task.validate();
  if (task.R_f <= task.R_i)
    throw std::domain_error(
        "memristive_optimal: only R_f > R_i is supported (the V > V_on branch "
        "moves the state upward; reverse switching is out of scope)");
  if (task.R_i < m.R_on || task.R_f > m.R_off)
    throw std::domain_error(
        "memristive_optimal: task resistances must lie within [R_on, R_off]");
}

std::vector<double> uniform_times(double t_i, double t_f, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  const double dt = (t_f - t_i) / (n - 1);
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = t_i + dt * j;
  t.back() = t_f;
  return t;
}

// 4th-order first derivative of uniform samples: five-point centered stencil
// inside, one-sided five-point stencils at the two nodes on each edge.
std::vector<double> derivative_samples(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  if (n < 5)
    throw std::invalid_argument("derivative_samples: need at least 5 samples");
  std::vector<double> d(n);
  const double w = 1.0 / (12.0 * h);
  d[0] = (-25 * y[0] + 48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]) * w;
  d[1] = (-3 * y[0] - 10 * y[1] + 18 * y[2] - 6 * y[3] + y[4]) * w;
  for (std::size_t j = 2; j + 2 < n; ++j)
    d[j] = (y[j - 2] - 8 * y[j - 1] + 8 * y[j + 1] - y[j + 2]) * w;
  d[n - 2] = (3 * y[n - 1] + 10 * y[n - 2] - 18 * y[n - 3] + 6 * y[n - 4] - y[n - 5]) * w;
  d[n - 1] = (25 * y[n - 1] - 48 * y[n - 2] + 36 * y[n - 3] - 16 * y[n - 4] + 3 * y[n - 5]) * w;
  return d;
}

double sup_abs(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

FirstOrderControlModel control_model(const ThresholdMemristiveModel& m) {
  m.validate();
  const double k = m.k;
  const double V_on = m.V_on;
  const double dR = m.delta_R();
  FirstOrderControlModel cm;
  cm.f = [k, V_on](double, double V) { return k * (V - V_on); };
  cm.f_V = [k](double, double) { return k; };
  cm.f_x = [](double, double) { return 0.0; };
  cm.R = [m](double x) { return m.memristance(x); };
  cm.dR_dx = [dR](double) { return dR; };
  // Λ·R·k = 2V  =>  V = Λ·k·R/2.
  cm.control_from_adjoint = [k, m](double x, double Lambda) {
    return 0.5 * Lambda * k * m.memristance(x);
  };
  return cm;
}

FirstOrderControlModel control_model(const ChargeMemristor& m) {
  FirstOrderControlModel cm;
  std::function<double(double)> dR;
  if (m.is_linear()) {
    const double b = m.slope();
    dR = [b](double) { return b; };
  } else {
    dR = [m](double q) {
      const double h = 1e-6 * std::max(1.0, std::abs(q));
      return (m.memristance(q + h) - m.memristance(q - h)) / (2 * h);
    };
  }
  cm.f = [m](double q, double V) { return V / m.memristance(q); };
  cm.f_V = [m](double q, double) { return 1.0 / m.memristance(q); };
  cm.f_x = [m, dR](double q, double V) {
    const double R = m.memristance(q);
    return -V * dR(q) / (R * R);
  };
  cm.R = [m](double q) { return m.memristance(q); };
  cm.dR_dx = dR;
  // Λ·R·(1/R) = 2V  =>  V = Λ/2.
  cm.control_from_adjoint = [](double, double Lambda) { return 0.5 * Lambda; };
  return cm;
}

ResidualReport necessary_conditions_residual(const FirstOrderControlModel& m,
                                             const AdjointState& s, double x_i,
                                             double x_f) {
  if (!m.f || !m.f_V || !m.f_x || !m.R || !m.dR_dx)
    throw std::invalid_argument(
        "necessary_conditions_residual: model must supply f, f_V, f_x, R, dR_dx");
  const std::size_t n = s.time.size();
  if (n < 5)
    throw std::invalid_argument(
        "necessary_conditions_residual: need at least 5 samples");
  if (s.x.size() != n || s.V.size() != n || s.Lambda.size() != n)
    throw std::invalid_argument(
        "necessary_conditions_residual: time/x/V/Lambda lengths differ");
  const double h = (s.time.back() - s.time.front()) / static_cast<double>(n - 1);
  if (!(h > 0))
    throw std::invalid_argument("necessary_conditions_residual: time must increase");

  std::vector<double> stat_res(n), stat_rhs(n);
  std::vector<double> adj_rhs(n), state_rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = s.x[j];
    const double V = s.V[j];
    const double L = s.Lambda[j];
    const double R = m.R(x);
    const double fV = m.f_V(x, V);
    if (fV == 0.0) {
      std::ostringstream os;
      os << "necessary_conditions_residual: singular control at t = " << s.time[j]
         << " (df/dV = 0, the stationarity condition cannot be solved for the "
            "multiplier)";
      throw numerical_error(os.str());
    }
    stat_res[j] = L * R * fV - 2 * s.lambda0 * V;
    stat_rhs[j] = 2 * s.lambda0 * V;
    adj_rhs[j] = -s.lambda0 * V * V * m.dR_dx(x) / (R * R) - L * m.f_x(x, V);
    state_rhs[j] = m.f(x, V);
  }
  const std::vector<double> dL = derivative_samples(s.Lambda, h);
  const std::vector<double> dx = derivative_samples(s.x, h);

  ResidualReport rep;
  const double stat_den = std::max(sup_abs(stat_rhs), DBL_MIN);
  rep.stationarity = sup_abs(stat_res) / stat_den;
  double adj_sup = 0, state_sup = 0;
  for (std::size_t j = 0; j < n; ++j) {
    adj_sup = std::max(adj_sup, std::abs(dL[j] - adj_rhs[j]));
    state_sup = std::max(state_sup, std::abs(dx[j] - state_rhs[j]));
  }
  rep.adjoint = adj_sup / std::max(sup_abs(adj_rhs), DBL_MIN);
  rep.state = state_sup / std::max(sup_abs(state_rhs), DBL_MIN);
  rep.x_i_error = std::abs(s.x.front() - x_i);
  rep.x_f_error = std::abs(s.x.back() - x_f);
  return rep;
}

ThresholdOptimum solve_threshold_closed_form(const ThresholdMemristiveModel& m,
                                             const SwitchingTask& task, int n) {
  require_on_branch(m, task);
  require_grid(n);
  const double dR = m.delta_R();
  const double T = task.duration();
  const double k = m.k;
  const double V_on = m.V_on;
  const double R_i = task.R_i;
  const double R_f = task.R_f;

  // Boundary fit of R(t) = C·ΔR·(t+t0)² + k·ΔR·V_on·(t+t0). The quadratic for
  // C is evaluated through its conjugate so the small-C (nearly drift-matched)
  // case suffers no cancellation; the same factor cancels the 1/C pole in t0.
  const double g = k * V_on * dR * T;
  const double root = std::sqrt(4 * R_i * R_f + g * g);
  const double C = ((R_f - R_i) * (R_f - R_i) - g * g) / ((R_f + R_i + root) * dR * T * T);
  const double t0 = T * (R_f + R_i + root) / (2 * (R_f - R_i + g)) - 0.5 * (task.t_f + task.t_i);

  if (task.t_i + t0 <= 0 || task.t_f + t0 <= 0) {
    std::ostringstream os;
    os << "solve_threshold_closed_form: log argument not positive (t_i+t0 = "
       << task.t_i + t0 << ", t_f+t0 = " << task.t_f + t0 << ")";
    throw std::domain_error(os.str());
  }

  ThresholdOptimum out;
  out.C = C;
  out.t0 = t0;
  out.Q = 4.0 / (k * k * dR) *
          (C * T + k * V_on * std::log((task.t_f + t0) / (task.t_i + t0)));

  // V(t) is affine; with C < 0 it decays through V_on at a finite time. Past
  // that instant the branch formulas keep moving x downhill even though the
  // physical dead zone would freeze it, so the protocol is flagged invalid.
  if (C < 0) {
    const double t_cross = -k * V_on / (2 * C) - t0;
    if (t_cross < task.t_f) out.V_crossing = t_cross;
    out.regime_valid = !(t_cross < task.t_f);
  }

  std::vector<double> time = uniform_times(task.t_i, task.t_f, n);
  std::vector<double> x(time.size()), R(time.size()), I(time.size());
  std::vector<std::uint8_t> ok(time.size());
  out.adjoint.time = time;
  out.adjoint.x.resize(time.size());
  out.adjoint.V.resize(time.size());
  out.adjoint.Lambda.resize(time.size());
  for (std::size_t j = 0; j < time.size(); ++j) {
    const double s = time[j] + t0;
    R[j] = C * dR * s * s + k * dR * V_on * s;
    x[j] = (R[j] - m.R_on) / dR;
    I[j] = 2.0 / (k * dR * s);
    const double V = 2 * V_on + (2 * C / k) * s;
    ok[j] = static_cast<std::uint8_t>(V > V_on && x[j] >= -1e-9 && x[j] <= 1 + 1e-9);
    out.adjoint.x[j] = x[j];
    out.adjoint.V[j] = V;
    out.adjoint.Lambda[j] = 4.0 / (k * k * dR * s);
  }
  if (std::abs(R.front() - R_i) > 1e-9 * R_i || std::abs(R.back() - R_f) > 1e-9 * R_f) {
    std::ostringstream os;
    os << "solve_threshold_closed_form: boundary fit failed (R(t_i) = " << R.front()
       << " vs " << R_i << ", R(t_f) = " << R.back() << " vs " << R_f << ")";
    throw numerical_error(os.str());
  }
  out.trajectory = Trajectory::from_samples(std::move(time), std::move(x), std::move(R),
                                            std::move(I), std::move(ok));
  return out;
}

ThresholdBaseline baseline_threshold_constant_voltage(const ThresholdMemristiveModel& m,
                                                      const SwitchingTask& task, int n) {
  m.validate();
  task.validate();
  require_grid(n);
  if (task.R_f < task.R_i)
    throw std::domain_error(
        "baseline_threshold_constant_voltage: only R_f >= R_i is supported "
        "(V > V_on branch)");
  if (task.R_i < m.R_on || task.R_f > m.R_off)
    throw std::domain_error(
        "baseline_threshold_constant_voltage: task resistances must lie within "
        "[R_on, R_off]");
  const double T = task.duration();
  const double x_i = m.x_of_resistance(task.R_i);
  const double x_f = m.x_of_resistance(task.R_f);

  ThresholdBaseline out;
  std::vector<double> time = uniform_times(task.t_i, task.t_f, n);
  std::vector<double> x(time.size()), R(time.size()), I(time.size());

  if (x_f == x_i) {
    // Zero swing: the smallest admissible hold voltage is the dead-zone edge.
    out.degenerate = true;
    out.drive = m.V_on;
    out.Q = m.V_on * m.V_on * T / task.R_i;
    for (std::size_t j = 0; j < time.size(); ++j) {
      x[j] = x_i;
      R[j] = task.R_i;
      I[j] = m.V_on / task.R_i;
    }
    out.trajectory =
        Trajectory::from_samples(std::move(time), std::move(x), std::move(R), std::move(I));
    return out;
  }

  const double V = m.V_on + (x_f - x_i) / (m.k * T);
  out.drive = V;
  // x moves linearly, so R is affine in t and ∫V²/R dt integrates to a log.
  out.Q = V * V * T * std::log1p((task.R_f - task.R_i) / task.R_i) / (task.R_f - task.R_i);
  for (std::size_t j = 0; j < time.size(); ++j) {
    const double u = (time[j] - task.t_i) / T;
    x[j] = x_i + (x_f - x_i) * u;
    R[j] = m.memristance(x[j]);
    I[j] = V / R[j];
  }
  out.trajectory =
      Trajectory::from_samples(std::move(time), std::move(x), std::move(R), std::move(I));
  return out;
}

ThresholdBaseline baseline_threshold_constant_current(const ThresholdMemristiveModel& m,
                                                      const SwitchingTask& task, int n) {
  require_on_branch(m, task);
  require_grid(n);
  const double T = task.duration();
  const double dR = m.delta_R();
  const double k = m.k;
  const double V_on = m.V_on;
  const double R_i = task.R_i;
  const double R_f = task.R_f;

  // Under constant I the resistance obeys R(t) = A + D·exp(λ(t-t_i)) with
  // A = V_on/I and D = R_i - V_on/I. For fast devices the root current sits a
  // sub-double-ulp distance above V_on/R_i, so everything is parameterized by
  // eps = I - V_on/R_i (A and D derived symbolically from eps, never by the
  // cancelling subtraction) and the root search runs in log(eps) space.
  const auto resistance_gap = [&](double eps) {
    const double w = eps * R_i / V_on;     // dimensionless overdrive
    const double A = R_i / (1 + w);
    const double D = R_i * w / (1 + w);
    const double lambda = k * dR * (V_on / R_i + eps);
    return A + D * std::exp(lambda * T) - R_f;  // +inf overflow keeps the sign
  };

  const double eps_floor = 1e-300;
  double eps_lo = 1e-9 * V_on / R_i;
  double eps_hi = 999.0 * V_on / R_i;
  while (resistance_gap(eps_hi) < 0) {
    eps_hi *= 1e3;
    if (eps_hi > 1e280) {
      std::ostringstream os;
      os << "baseline_threshold_constant_current: no current reaches R_f = " << R_f
         << " (searched I - V_on/R_i up to " << eps_hi << " mA)";
      throw infeasible_error(os.str());
    }
  }
  while (resistance_gap(eps_lo) > 0) {
    eps_lo *= 1e-30;
    if (eps_lo < eps_floor) {
      std::ostringstream os;
      os << "baseline_threshold_constant_current: root current is closer to "
            "V_on/R_i = "
         << V_on / R_i << " mA than 1e-300 (switching window too long to resolve)";
      throw infeasible_error(os.str());
    }
  }
  const double log_eps = find_root_bracketed(
      [&](double s) { return resistance_gap(std::exp(s)); }, std::log(eps_lo),
      std::log(eps_hi), 1e-13, 300);
  const double eps = std::exp(log_eps);

  const double I = V_on / R_i + eps;
  const double w = eps * R_i / V_on;
  const double A = R_i / (1 + w);
  const double D = R_i * w / (1 + w);
  const double lambda = k * dR * I;

  ThresholdBaseline out;
  out.drive = I;
  // Q = I²∫R dt with ∫R dt = A·T + (R(t_f)-R_i)/λ; using R(t_f)=R_f exactly.
  out.Q = I * (V_on * T + (R_f - R_i) / (k * dR));

  std::vector<double> time = uniform_times(task.t_i, task.t_f, n);
  std::vector<double> x(time.size()), R(time.size()), Iv(time.size());
  for (std::size_t j = 0; j < time.size(); ++j) {
    R[j] = A + D * std::exp(lambda * (time[j] - task.t_i));
    x[j] = m.x_of_resistance(R[j]);
    Iv[j] = I;
  }
  // Pin the endpoint: the root is exact to ~1e-13 in log(eps), and downstream
  // checks compare R(t_f) against R_f at tighter tolerances.
  R.back() = R_f;
  x.back() = m.x_of_resistance(R_f);
  out.trajectory =
      Trajectory::from_samples(std::move(time), std::move(x), std::move(R), std::move(Iv));
  return out;
}

ShootingResult solve_shooting(const FirstOrderControlModel& m, double x_i, double x_f,
                              double t_i, double t_f, double lambda_guess, int n,
                              int substeps, double tol, int max_iter) {
  if (!m.f || !m.f_V || !m.f_x || !m.R || !m.dR_dx)
    throw std::invalid_argument("solve_shooting: model must supply f, f_V, f_x, R, dR_dx");
  if (!(t_f > t_i)) throw std::domain_error("solve_shooting: t_f must exceed t_i");
  if (n < 5) throw std::invalid_argument("solve_shooting: grid needs at least 5 samples");
  if (substeps < 1) throw std::invalid_argument("solve_shooting: substeps must be >= 1");
  if (!(tol > 0) || max_iter < 2)
    throw std::invalid_argument("solve_shooting: tol must be positive, max_iter >= 2");

  const double lambda0 = 1.0;
  const auto voltage_of = [&](double x, double L) {
    if (m.control_from_adjoint) return m.control_from_adjoint(x, L);
    // Newton on Λ·R·f_V(x,V) = 2·λ0·V starting from the linear-response guess.
    const double RL = m.R(x) * L;
    double V = 0.5 * RL * m.f_V(x, 0.0);
    for (int it = 0; it < 80; ++it) {
      const double g = RL * m.f_V(x, V) - 2 * lambda0 * V;
      const double hV = 1e-7 * std::max(1.0, std::abs(V));
      const double dg =
          (RL * m.f_V(x, V + hV) - RL * m.f_V(x, V - hV)) / (2 * hV) - 2 * lambda0;
      if (dg == 0) break;
      const double V_next = V - g / dg;
      if (std::abs(V_next - V) <= 1e-14 * std::max(1.0, std::abs(V_next))) return V_next;
      V = V_next;
    }
    if (std::abs(RL * m.f_V(x, V) - 2 * lambda0 * V) >
        1e-9 * std::max(1.0, std::abs(2 * lambda0 * V)))
      throw numerical_error("solve_shooting: control inversion did not converge");
    return V;
  };

  struct Trial {
    bool finite = false;
    std::vector<double> x, L, V;
  };
  const int total = n - 1;
  const double dt = (t_f - t_i) / total;
  const double h = dt / substeps;

  const auto integrate = [&](double L0) {
    Trial trial;
    trial.x.reserve(static_cast<std::size_t>(n));
    trial.L.reserve(static_cast<std::size_t>(n));
    trial.V.reserve(static_cast<std::size_t>(n));
    double x = x_i, L = L0;
    const auto rate = [&](double xc, double Lc, double& dx, double& dL) {
      const double V = voltage_of(xc, Lc);
      const double R = m.R(xc);
      dx = m.f(xc, V);
      dL = -lambda0 * V * V * m.dR_dx(xc) / (R * R) - Lc * m.f_x(xc, V);
    };
    try {
      trial.x.push_back(x);
      trial.L.push_back(L);
      trial.V.push_back(voltage_of(x, L));
      for (int seg = 0; seg < total; ++seg) {
        for (int s = 0; s < substeps; ++s) {
          double k1x, k1L, k2x, k2L, k3x, k3L, k4x, k4L;
          rate(x, L, k1x, k1L);
          rate(x + 0.5 * h * k1x, L + 0.5 * h * k1L, k2x, k2L);
          rate(x + 0.5 * h * k2x, L + 0.5 * h * k2L, k3x, k3L);
          rate(x + h * k3x, L + h * k3L, k4x, k4L);
          x += h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
          L += h / 6 * (k1L + 2 * k2L + 2 * k3L + k4L);
          if (!std::isfinite(x) || !std::isfinite(L)) return trial;
        }
        trial.x.push_back(x);
        trial.L.push_back(L);
        trial.V.push_back(voltage_of(x, L));
      }
    } catch (const std::exception&) {
      trial.finite = false;  // R(x) left its domain: reject this initial multiplier
      return trial;
    }
    trial.finite = true;
    return trial;
  };

  const double scale = std::max({1.0, std::abs(x_i), std::abs(x_f)});
  const auto miss_of = [&](const Trial& t) {
    return t.finite ? t.x.back() - x_f : std::numeric_limits<double>::quiet_NaN();
  };

  double La = lambda_guess;
  Trial trial_a = integrate(La);
  double miss_a = miss_of(trial_a);
  int used = 1;
  // A dead first guess (the state left the model's domain before t_f) is
  // rescued by scanning multipliers on a geometric ladder around the guess in
  // BOTH directions: under- and over-driven trials fail on opposite sides.
  // Threshold-style kinetics reverse below V_on and push R through zero, so a
  // smaller multiplier is not necessarily safer.
  if (!std::isfinite(miss_a)) {
    const double base = lambda_guess != 0 ? lambda_guess : 1.0;
    for (int j = 1; j <= 40 && used < max_iter && !std::isfinite(miss_a); ++j) {
      for (const double factor : {std::pow(4.0, j), std::pow(4.0, -j)}) {
        La = base * factor;
        trial_a = integrate(La);
        miss_a = miss_of(trial_a);
        ++used;
        if (std::isfinite(miss_a) || used >= max_iter) break;
      }
    }
    if (!std::isfinite(miss_a) && used < max_iter) {
      La = 0.0;
      trial_a = integrate(La);
      miss_a = miss_of(trial_a);
      ++used;
    }
  }
  if (!std::isfinite(miss_a))
    throw numerical_error("solve_shooting: could not find a finite starting multiplier");

  double best_miss = std::abs(miss_a);
  double best_L = La;
  Trial best_trial = trial_a;

  double Lb = La + std::max(1e-4, 1e-2 * std::abs(La));
  Trial trial_b = integrate(Lb);
  double miss_b = miss_of(trial_b);
  ++used;
  for (; used < max_iter && !(best_miss <= tol * scale); ++used) {
    if (std::isfinite(miss_b) && std::abs(miss_b) < best_miss) {
      best_miss = std::abs(miss_b);
      best_L = Lb;
      best_trial = trial_b;
      if (best_miss <= tol * scale) break;
    }
    double L_next;
    if (!std::isfinite(miss_b)) {
      L_next = 0.5 * (La + Lb);  // pull the dead trial toward the live one
    } else if (miss_b == miss_a || !std::isfinite(miss_a)) {
      L_next = Lb + 2 * (Lb - La);  // flat or half-dead secant: expand
    } else {
      L_next = Lb - miss_b * (Lb - La) / (miss_b - miss_a);
      if (!std::isfinite(L_next)) L_next = Lb + 2 * (Lb - La);
    }
    if (std::isfinite(miss_b)) {
      La = Lb;
      miss_a = miss_b;
      trial_a = trial_b;
    }
    Lb = L_next;
    trial_b = integrate(Lb);
    miss_b = miss_of(trial_b);
  }
  if (std::isfinite(miss_b) && std::abs(miss_b) < best_miss) {
    best_miss = std::abs(miss_b);
    best_L = Lb;
    best_trial = trial_b;
  }

  if (!(best_miss <= std::max(tol, 1e-8) * scale)) {
    std::ostringstream os;
    os << "solve_shooting: endpoint unreachable: |x(t_f) - x_f| = " << best_miss
       << " after " << used << " iterations (best Λ(t_i) = " << best_L << ")";
    throw infeasible_error(os.str());
  }

  ShootingResult out;
  out.iterations = used;
  out.endpoint_error = best_miss;
  out.state.lambda0 = lambda0;
  out.state.time = uniform_times(t_i, t_f, n);
  out.state.x = std::move(best_trial.x);
  out.state.V = std::move(best_trial.V);
  out.state.Lambda = std::move(best_trial.L);
  out.residuals = necessary_conditions_residual(m, out.state, x_i, x_f);

  std::vector<double> R(out.state.x.size()), I(out.state.x.size());
  for (std::size_t j = 0; j < out.state.x.size(); ++j) {
    R[j] = m.R(out.state.x[j]);
    I[j] = out.state.V[j] / R[j];
  }
  out.trajectory = Trajectory::from_samples(out.state.time, out.state.x, std::move(R),
                                            std::move(I));
  return out;
}

std::vector<ThresholdSweepPoint> sweep_threshold_targets(const ThresholdMemristiveModel& m,
                                                         double t_i, double t_f,
                                                         double R_i, int points) {
  m.validate();
  if (points < 1) throw std::invalid_argument("sweep_threshold_targets: points must be >= 1");
  if (!(t_f > t_i)) throw std::domain_error("sweep_threshold_targets: t_f must exceed t_i");
  if (R_i < m.R_on || R_i >= m.R_off)
    throw std::domain_error("sweep_threshold_targets: R_i must lie in [R_on, R_off)");

  std::vector<ThresholdSweepPoint> sweep;
  sweep.reserve(static_cast<std::size_t>(points));
  for (int j = 1; j <= points; ++j) {
    SwitchingTask task;
    task.t_i = t_i;
    task.t_f = t_f;
    task.R_i = R_i;
    task.R_f = R_i + (m.R_off - R_i) * j / points;
    if (j == points) task.R_f = m.R_off;

    const ThresholdOptimum opt = solve_threshold_closed_form(m, task, 201);
    const ThresholdBaseline cv = baseline_threshold_constant_voltage(m, task, 3);
    const ThresholdBaseline ci = baseline_threshold_constant_current(m, task, 3);

    ThresholdSweepPoint p;
    p.R_f = task.R_f;
    p.Q_opt = opt.Q;
    p.Q_cv = cv.Q;
    p.Q_ci = ci.Q;
    p.I_cc = ci.drive;
    p.saving_vs_cv = 1 - opt.Q / cv.Q;
    p.saving_vs_ci = 1 - opt.Q / ci.Q;
    p.regime_valid = opt.regime_valid;
    p.V_crossing = opt.V_crossing;
    sweep.push_back(p);
  }
  return sweep;
}

}  // namespace memopt
