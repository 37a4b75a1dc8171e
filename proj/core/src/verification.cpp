#include <memopt/verification.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <utility>

#include <memopt/constrained_control.hpp>
#include <memopt/device_models.hpp>
#include <memopt/errors.hpp>
#include <memopt/ideal_optimal.hpp>
#include <memopt/memristive_optimal.hpp>
#include <memopt/numerics.hpp>

namespace memopt {

namespace {

// Clause collector: a check passes iff every requirement held; the detail line
// carries the measured numbers plus the labels of any failed clauses.
struct Check {
  bool ok = true;
  std::ostringstream info;
  std::vector<std::string> fails;

  Check() { info << std::setprecision(8); }
  void req(bool cond, const std::string& label) {
    if (!cond) {
      ok = false;
      fails.push_back(label);
    }
  }
  CheckResult finish(std::string id, std::string name) {
    std::string detail = info.str();
    if (!fails.empty()) {
      detail += " | failed:";
      for (const auto& f : fails) detail += " [" + f + "]";
    }
    return CheckResult{std::move(id), std::move(name), ok, std::move(detail)};
  }
};

double rel_diff(double x, double y) {
  const double scale = std::max({std::fabs(x), std::fabs(y), 1e-300});
  return std::fabs(x - y) / scale;
}

ThresholdMemristiveModel scenario_threshold_model() {
  ThresholdMemristiveModel m;
  m.R_on = 1;
  m.R_off = 100;
  m.k = 0.5;
  m.V_on = 1;
  m.V_off = -1;
  return m;
}

SwitchingTask scenario_threshold_task() {
  SwitchingTask t;
  t.t_i = 0;
  t.t_f = 5;
  t.R_i = 1;
  t.R_f = 100;
  return t;
}

SwitchingTask scenario_compliance_task() {
  SwitchingTask t;
  t.t_i = 0;
  t.t_f = 5;
  t.R_i = 1;
  t.R_f = 100;
  t.compliance = 0.25;
  return t;
}

struct RandomLinearTask {
  ChargeMemristor model = ChargeMemristor::linear(1, 1);
  SwitchingTask task;
};

RandomLinearTask draw_linear_task(std::mt19937_64& rng, bool allow_decreasing) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double a = 0.3 + 1.7 * u01(rng);
  const double b = 0.2 + 2.8 * u01(rng);
  const double R_lo = 0.5 + 3.5 * u01(rng);
  const double rho = std::exp(std::log(1.5) + (std::log(50.0) - std::log(1.5)) * u01(rng));
  const double T = 0.2 + 3.8 * u01(rng);
  const double t_i = -1.0 + 2.0 * u01(rng);
  RandomLinearTask out;
  out.model = ChargeMemristor::linear(a, b);
  out.task.t_i = t_i;
  out.task.t_f = t_i + T;
  out.task.R_i = R_lo;
  out.task.R_f = R_lo * rho;
  if (allow_decreasing && u01(rng) < 0.5) std::swap(out.task.R_i, out.task.R_f);
  return out;
}

// --- A1 -------------------------------------------------------------------

CheckResult check_ratio_asymptotes() {
  Check c;
  const double r_hi = optimal_ratio(1e6);
  const double r_lo = optimal_ratio(1e-6);
  const double target = 8.0 / 9.0;
  c.req(std::fabs(r_hi - target) <= 1e-3, "ratio(1e6) within 1e-3 of 8/9");
  c.req(std::fabs(r_lo - target) <= 1e-3, "ratio(1e-6) within 1e-3 of 8/9");
  double worst_sym = 0;
  for (int j = 0; j <= 120; ++j) {
    const double rho = std::pow(10.0, -6.0 + 0.1 * j);
    worst_sym = std::max(worst_sym,
                         std::fabs(optimal_ratio(rho) - optimal_ratio(1.0 / rho)));
  }
  c.req(worst_sym <= 1e-9, "symmetry under rho<->1/rho to 1e-9");
  c.info << "ratio(1e6)=" << r_hi << " ratio(1e-6)=" << r_lo
         << " max symmetry gap=" << worst_sym;
  return c.finish("A1", "heat-ratio asymptotes and symmetry");
}

// --- A2 -------------------------------------------------------------------

CheckResult check_savings_bound() {
  Check c;
  std::vector<double> r;
  for (int j = 0; j <= 120; ++j) r.push_back(optimal_ratio(std::pow(10.0, -6.0 + 0.1 * j)));
  const double r_min = *std::min_element(r.begin(), r.end());
  c.req(r_min >= 8.0 / 9.0 - 1e-6, "min ratio >= 8/9 - 1e-6");
  bool mono_left = true, mono_right = true;
  for (int j = 0; j < 60; ++j) mono_left &= r[j + 1] >= r[j] - 1e-12;
  for (int j = 60; j < 120; ++j) mono_right &= r[j + 1] <= r[j] + 1e-12;
  c.req(mono_left, "non-decreasing toward rho=1 from below");
  c.req(mono_right, "non-increasing beyond rho=1");
  c.req(optimal_ratio(1.0) == 1.0, "ratio(1) == 1");
  c.info << "min ratio=" << std::setprecision(12) << r_min << " (8/9=" << 8.0 / 9.0 << ")";
  return c.finish("A2", "savings bounded by 8/9");
}

// --- A3 -------------------------------------------------------------------

CheckResult check_compliance_release() {
  Check c;
  const ChargeMemristor model = ChargeMemristor::linear(1, 100);
  const ConstrainedSolution sol =
      solve_linear_with_compliance(model, scenario_compliance_task(), 1001, true);
  c.req(sol.mode == ComplianceMode::clamped_then_interior, "mode is clamped-then-interior");
  const double rr = sol.R_c / sol.task.R_f;
  const double tr = sol.t_c / sol.task.t_f;
  c.req(std::fabs(rr - 0.34) <= 0.005, "R_c/R_f = 0.34 +- 0.005");
  c.req(std::fabs(tr - 0.26) <= 0.005, "t_c/t_f = 0.26 +- 0.005");
  double jump = -1;
  if (sol.phase1 && sol.phase2) {
    jump = std::fabs(sol.phase1->current.back() - sol.phase2->current.front());
    c.req(jump <= 1e-8 * sol.I_c, "current continuous at t_c to 1e-8");
  } else {
    c.req(false, "both phases present");
  }
  c.req(sol.diagnostic_other_root &&
            *sol.diagnostic_other_root > std::sqrt(sol.task.R_f),
        "second cubic root beyond sqrt(R_f)");
  c.info << "R_c/R_f=" << rr << " t_c/t_f=" << tr << " R_c=" << sol.R_c
         << " t_c=" << sol.t_c << " |dI(t_c)|=" << jump;
  return c.finish("A3", "compliance release point");
}

// --- A4 -------------------------------------------------------------------

// Constant power is asserted two ways: the sampled power channel must be flat,
// and — independently of how the channels were assembled — the first integral
// must hold in integral form: the arc length of sqrt(R) from q_i to q(t) must
// grow exactly linearly in t with slope C1.
void constant_power_clauses(Check& c, const std::string& tag, const IdealOptimum& opt,
                            const std::function<double(double)>& phi_from_qi,
                            double t_i) {
  const auto& P = opt.trajectory.power;
  double p_min = P[0], p_max = P[0], p_mean = 0;
  for (double p : P) {
    p_min = std::min(p_min, p);
    p_max = std::max(p_max, p);
    p_mean += p;
  }
  p_mean /= static_cast<double>(P.size());
  const double spread = (p_max - p_min) / std::max(std::fabs(p_mean), 1e-300);
  c.req(spread < 1e-6, tag + ": power spread < 1e-6");

  double worst = 0;
  for (std::size_t j = 0; j < opt.trajectory.size(); ++j) {
    const double predicted = opt.C1 * (opt.trajectory.time[j] - t_i);
    worst = std::max(worst, std::fabs(phi_from_qi(opt.trajectory.state[j]) - predicted));
  }
  const double T = opt.trajectory.time.back() - opt.trajectory.time.front();
  const double scale = std::max(std::fabs(opt.C1) * T, 1e-300);
  c.req(worst <= 1e-9 * scale, tag + ": first-integral residual <= 1e-9");
}

CheckResult check_constant_power(std::uint64_t seed) {
  Check c;

  {
    const ChargeMemristor model = ChargeMemristor::linear(1, 1);
    SwitchingTask task;
    task.t_i = 0;
    task.t_f = 1;
    task.R_i = 1;
    task.R_f = 100;
    const IdealOptimum opt = solve_linear(model, task, 1001);
    const double b = 1.0;
    const double W_i = std::pow(task.R_i, 1.5);
    constant_power_clauses(c, "affine", opt,
                           [&](double q) {
                             const double R = 1 + b * q;
                             return 2.0 / (3 * b) * (std::pow(R, 1.5) - W_i);
                           },
                           task.t_i);
  }
  {
    const ChargeMemristor model =
        ChargeMemristor::from_function([](double q) { return (1 + q) * (1 + q); });
    SwitchingTask task;
    task.t_i = 0;
    task.t_f = 1;
    task.R_i = 1;
    task.R_f = 9;
    task.q_i = 0;
    task.q_f = 2;
    const IdealOptimum opt = solve_general(model, task, 1001);
    c.req(rel_diff(opt.Q, 16.0) <= 1e-8, "general model Q == 16");
    // sqrt(R) = 1+q, so the arc length from 0 integrates to q + q^2/2.
    constant_power_clauses(c, "general", opt,
                           [](double q) { return q + 0.5 * q * q; }, task.t_i);
  }
  std::mt19937_64 rng(seed ^ 0xa4a4a4a4ULL);
  for (int i = 0; i < 3; ++i) {
    const RandomLinearTask rt = draw_linear_task(rng, true);
    const IdealOptimum opt = solve_linear(rt.model, rt.task, 1001);
    const double a = rt.model.offset(), b = rt.model.slope();
    const double W_i = std::pow(rt.task.R_i, 1.5);
    constant_power_clauses(c, "seeded#" + std::to_string(i), opt,
                           [&](double q) {
                             return 2.0 / (3 * b) * (std::pow(a + b * q, 1.5) - W_i);
                           },
                           rt.task.t_i);
  }

  const std::vector<std::pair<double, double>> weights = {
      {1, 1}, {4, 1}, {1, 4}, {2, 3}, {5, 0.5}};
  const ChargeMemristor model = ChargeMemristor::linear(1, 1);
  double worst_balance = 0;
  for (const auto& [w1, w2] : weights) {
    const TimeEnergyTradeoff t = solve_time_energy(model, 1, 100, w1, w2, 0, 101);
    worst_balance = std::max(worst_balance,
                             std::fabs(w1 * t.Q_opt - w2 * t.T_opt) /
                                 std::max(w1 * t.Q_opt, 1e-300));
  }
  c.req(worst_balance <= 1e-9, "w1*Q == w2*T to 1e-9");
  const TimeEnergyTradeoff base = solve_time_energy(model, 1, 100, 1, 1, 0, 101);
  const TimeEnergyTradeoff scaled = solve_time_energy(model, 1, 100, 4, 1, 0, 101);
  c.req(rel_diff(scaled.T_opt, 2 * base.T_opt) <= 1e-12 &&
            rel_diff(scaled.Q_opt, 0.5 * base.Q_opt) <= 1e-12,
        "w1 x4 doubles T and halves Q");
  c.req(rel_diff(base.T_opt, 666.0) <= 1e-12 && rel_diff(base.Q_opt, 666.0) <= 1e-12,
        "unit-weight tradeoff hits 666");
  c.info << "tradeoff balance worst=" << worst_balance << " seed=" << seed;
  return c.finish("A4", "constant power and tradeoff balance");
}

// --- A5 -------------------------------------------------------------------

CheckResult check_baseline_equality(std::uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed ^ 0xb5b5b5b5ULL);
  double worst_eq = 0, worst_margin = 1e300;
  for (int i = 0; i < 20; ++i) {
    const RandomLinearTask rt = draw_linear_task(rng, true);
    const BaselineProtocol cc = baseline_constant_current(rt.model, rt.task, 101);
    const BaselineProtocol cv = baseline_constant_voltage(rt.model, rt.task, 101);
    const IdealOptimum opt = solve_linear(rt.model, rt.task, 101);
    worst_eq = std::max(worst_eq, rel_diff(cc.Q, cv.Q));
    worst_margin = std::min(worst_margin, std::min(cc.Q, cv.Q) / opt.Q - 1);
  }
  c.req(worst_eq <= 1e-12, "Q_cv == Q_cc to 1e-12 on 20 seeded tasks");
  c.req(worst_margin > 0, "both baselines strictly exceed Q_opt");
  c.info << "worst |Q_cv-Q_cc| rel=" << worst_eq
         << " min baseline excess=" << worst_margin << " seed=" << seed;
  return c.finish("A5", "baseline heat equality");
}

// --- A6 -------------------------------------------------------------------

CheckResult check_oracle_equivalence(std::uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed ^ 0xc6c6c6c6ULL);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const RandomLinearTask rt = draw_linear_task(rng, false);
    const IdealOptimum opt = solve_linear(rt.model, rt.task, 101);
    const double q_i = rt.model.charge_of_resistance(rt.task.R_i);
    const double q_f = rt.model.charge_of_resistance(rt.task.R_f);
    const ChargeMemristor& model = rt.model;
    const DiscretePath path = minimize_discrete_path(
        [&model](double q) { return model.memristance(q); }, q_i, q_f, rt.task.t_i,
        rt.task.t_f, 128);
    worst = std::max(worst, std::fabs(path.Q / opt.Q - 1));
  }
  c.req(worst <= 0.002, "20 seeded tasks within 0.2% at N=128");

  const ChargeMemristor model = ChargeMemristor::linear(1, 100);
  const SwitchingTask task = scenario_compliance_task();
  const ConstrainedSolution sol = solve_linear_with_compliance(model, task, 1001);
  const DiscretePath clamped = minimize_discrete_path(
      [&model](double q) { return model.memristance(q); },
      model.charge_of_resistance(task.R_i), model.charge_of_resistance(task.R_f),
      task.t_i, task.t_f, 256, *task.compliance);
  const double gap = std::fabs(clamped.Q / constrained_energy(sol) - 1);
  const double prefix = clamped_prefix_fraction(clamped, *task.compliance);
  c.req(gap <= 0.01, "constrained oracle within 1% at N=256");
  c.req(std::fabs(prefix - 0.26) <= 0.02, "clamped prefix fraction 0.26 +- 0.02");
  c.info << "worst unconstrained gap=" << worst << " constrained gap=" << gap
         << " clamped prefix=" << prefix << " sweeps=" << clamped.sweeps
         << " seed=" << seed;
  return c.finish("A6", "discrete-path oracle equivalence");
}

// --- A7 -------------------------------------------------------------------

// Smooth endpoint-fixed perturbation: five-term sine series scaled so
// max|delta| is 1% of the charge swing; the derivative comes analytically from
// the series so the perturbed heat integrand is exact at the samples.
double perturbed_heat(const Trajectory& base, double a, double b,
                      const std::array<double, 5>& coeff, double scale) {
  const double T = base.time.back() - base.time.front();
  const std::size_t n = base.size();
  std::vector<double> P(n);
  constexpr double pi = 3.14159265358979323846;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = (base.time[j] - base.time.front()) / T;
    double d = 0, dd = 0;
    for (int m = 1; m <= 5; ++m) {
      d += coeff[static_cast<std::size_t>(m - 1)] * std::sin(m * pi * u);
      dd += coeff[static_cast<std::size_t>(m - 1)] * (m * pi / T) * std::cos(m * pi * u);
    }
    const double q = base.state[j] + scale * d;
    const double dq = base.current[j] + scale * dd;  // current == dq/dt for charge devices
    const double R = a + b * q;
    if (!(R > 0)) return -1;  // perturbation left the model domain: report as failure
    P[j] = R * dq * dq;
  }
  return quadrature(P, base.dt());
}

CheckResult check_perturbation_optimality(std::uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed ^ 0xd7d7d7d7ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  const ChargeMemristor lin = ChargeMemristor::linear(1, 1);
  SwitchingTask task;
  task.t_i = 0;
  task.t_f = 1;
  task.R_i = 1;
  task.R_f = 100;
  const IdealOptimum opt = solve_linear(lin, task, 1001);
  const double Q_free = quadrature(opt.trajectory.power, opt.trajectory.dt());

  const ChargeMemristor lin4 = ChargeMemristor::linear(1, 100);
  const ConstrainedSolution sol =
      solve_linear_with_compliance(lin4, scenario_compliance_task(), 1001);
  const Trajectory& arc = *sol.phase2;
  const double Q_arc = quadrature(arc.power, arc.dt());

  auto run = [&](const Trajectory& base, double a, double b, double Q_ref) {
    double worst = 1e300;
    for (int i = 0; i < 100; ++i) {
      std::array<double, 5> coeff{};
      double peak = 0;
      for (auto& x : coeff) x = u(rng);
      constexpr double pi = 3.14159265358979323846;
      for (int j = 0; j <= 400; ++j) {
        double d = 0;
        for (int m = 1; m <= 5; ++m)
          d += coeff[static_cast<std::size_t>(m - 1)] * std::sin(m * pi * j / 400.0);
        peak = std::max(peak, std::fabs(d));
      }
      const double swing = std::fabs(base.state.back() - base.state.front());
      const double scale = 0.01 * swing / peak;
      const double Q_pert = perturbed_heat(base, a, b, coeff, scale);
      worst = std::min(worst, Q_pert / Q_ref - 1);
    }
    return worst;
  };

  const double worst_free = run(opt.trajectory, 1, 1, Q_free);
  const double worst_arc = run(arc, 1, 100, Q_arc);
  c.req(worst_free >= -1e-12, "100 perturbations never beat the free optimum");
  c.req(worst_arc >= -1e-12, "100 perturbations never beat the interior arc");
  c.info << "min excess free=" << worst_free << " arc=" << worst_arc << " seed=" << seed;
  return c.finish("A7", "perturbation optimality");
}

// --- A8 -------------------------------------------------------------------

CheckResult check_threshold_closed_form() {
  Check c;
  const ThresholdMemristiveModel m = scenario_threshold_model();
  const SwitchingTask task = scenario_threshold_task();

  const ThresholdOptimum opt = solve_threshold_closed_form(m, task, 1001);
  c.req(std::fabs(opt.C - (-0.0595180)) <= 1e-6, "C = -0.0595180 +- 1e-6");
  c.req(std::fabs(opt.t0 - 0.020246) <= 1e-5, "t0 = 0.020246 +- 1e-5");
  c.req(std::fabs(opt.Q - 0.39744) <= 1e-4, "Q_opt = 0.39744 +- 1e-4");
  c.req(rel_diff(opt.trajectory.resistance.front(), task.R_i) <= 1e-9 &&
            rel_diff(opt.trajectory.resistance.back(), task.R_f) <= 1e-9,
        "boundary residuals <= 1e-9");
  c.req(!opt.regime_valid, "regime flagged invalid");
  c.req(opt.V_crossing && std::fabs(*opt.V_crossing - 4.1801672) <= 1e-2,
        "V crossing near 4.18");
  c.req(std::fabs(opt.adjoint.V.front() - 1.99518) <= 1e-4, "V(t_i) = 1.99518");

  // The other root of the boundary quadratic starts below the V_on threshold,
  // which is why the solver keeps only the negative-root branch.
  {
    const double dR = m.delta_R(), T = task.duration();
    const double g = m.k * m.V_on * dR * T;
    const double root = std::sqrt(4 * task.R_i * task.R_f + g * g);
    const double C_pos = (task.R_f + task.R_i + root) / (dR * T * T);
    const double t0_pos =
        (1 / (2 * C_pos)) * ((task.R_f - task.R_i) / (T * dR) - m.k * m.V_on) -
        0.5 * (task.t_f + task.t_i);
    const double V_pos = 2 * m.V_on + (2 * C_pos / m.k) * (task.t_i + t0_pos);
    c.req(V_pos <= m.V_on, "positive-root branch violates V > V_on");
  }

  const ThresholdOptimum fine = solve_threshold_closed_form(m, task, 25001);
  const ResidualReport res =
      necessary_conditions_residual(control_model(m), fine.adjoint, 0.0, 1.0);
  c.req(res.stationarity < 1e-6, "stationarity residual < 1e-6");
  c.req(res.adjoint < 1e-6, "adjoint residual < 1e-6");
  c.req(res.state < 1e-6, "state residual < 1e-6");

  const ThresholdOptimum quad = solve_threshold_closed_form(m, task, 20001);
  const double qres = rel_diff(joule_heat(quad.trajectory), opt.Q);
  c.req(qres <= 1e-6, "quadrature cross-check <= 1e-6 at N=20001");

  const ThresholdBaseline cv = baseline_threshold_constant_voltage(m, task, 1001);
  const ThresholdBaseline ci = baseline_threshold_constant_current(m, task, 1001);
  c.req(std::fabs(cv.Q - 0.45587) <= 1e-4, "Q_cv = 0.45587 +- 1e-4");
  c.req(std::fabs(cv.drive - 1.4) <= 1e-12, "V_cv = 1.4");
  c.req(opt.Q < cv.Q && cv.Q < ci.Q, "ordering Q_opt < Q_cv < Q_ci");
  c.info << "C=" << opt.C << " t0=" << opt.t0 << " Q=" << opt.Q << " Q_cv=" << cv.Q
         << " Q_ci=" << ci.Q << " residuals(stat/adj/state)=" << res.stationarity
         << "/" << res.adjoint << "/" << res.state << " quad_res(N=20001)=" << qres;
  return c.finish("A8", "threshold closed form");
}

// --- A9 -------------------------------------------------------------------

CheckResult check_reduction_and_shooting() {
  Check c;

  // Charge-device optimum recast as a first-order controlled system must obey
  // the full necessary-condition set with multiplier Lambda = 2V.
  auto reduction_residual = [&](double R_f, int n) {
    const ChargeMemristor lin = ChargeMemristor::linear(1, 1);
    SwitchingTask task;
    task.t_i = 0;
    task.t_f = 1;
    task.R_i = 1;
    task.R_f = R_f;
    const IdealOptimum opt = solve_linear(lin, task, n);
    AdjointState s;
    s.time = opt.trajectory.time;
    s.x = opt.trajectory.state;
    s.V = opt.trajectory.voltage;
    s.Lambda.resize(s.V.size());
    for (std::size_t j = 0; j < s.V.size(); ++j) s.Lambda[j] = 2 * s.V[j];
    return necessary_conditions_residual(control_model(lin), s, s.x.front(), s.x.back());
  };
  const ResidualReport gentle = reduction_residual(4, 1001);
  const ResidualReport steep = reduction_residual(100, 50001);
  for (const auto* r : {&gentle, &steep}) {
    c.req(r->stationarity < 1e-6 && r->adjoint < 1e-6 && r->state < 1e-6,
          "reduction residuals < 1e-6");
  }

  const ThresholdMemristiveModel m = scenario_threshold_model();
  const SwitchingTask task = scenario_threshold_task();
  const ThresholdOptimum cf = solve_threshold_closed_form(m, task, 1001);
  const ShootingResult sh = solve_shooting(control_model(m), 0, 1, 0, 5, 1.0, 1001, 200);
  double sup_thr = 0;
  for (std::size_t j = 0; j < sh.trajectory.size(); ++j)
    sup_thr = std::max(sup_thr, std::fabs(sh.trajectory.resistance[j] -
                                          cf.trajectory.resistance[j]));
  c.req(sup_thr / task.R_f <= 1e-5, "shooting matches threshold closed form to 1e-5");

  const ChargeMemristor lin = ChargeMemristor::linear(1, 1);
  SwitchingTask itask;
  itask.t_i = 0;
  itask.t_f = 1;
  itask.R_i = 1;
  itask.R_f = 100;
  const IdealOptimum iopt = solve_linear(lin, itask, 1001);
  const ShootingResult ish =
      solve_shooting(control_model(lin), 0, 99, 0, 1, 1.0, 1001, 200);
  double sup_lin = 0;
  for (std::size_t j = 0; j < ish.trajectory.size(); ++j)
    sup_lin = std::max(sup_lin, std::fabs(ish.trajectory.resistance[j] -
                                          iopt.trajectory.resistance[j]));
  c.req(sup_lin / itask.R_f <= 1e-5, "shooting matches affine closed form to 1e-5");
  c.info << "reduction residuals gentle(adj)=" << gentle.adjoint
         << " steep(adj)=" << steep.adjoint << " shooting sup: threshold="
         << sup_thr / task.R_f << " affine=" << sup_lin / itask.R_f
         << " iters=" << sh.iterations << "/" << ish.iterations;
  return c.finish("A9", "reduction and shooting consistency");
}

// --- A10 ------------------------------------------------------------------

CheckResult check_sweep_reporting() {
  Check c;
  const ThresholdMemristiveModel m = scenario_threshold_model();
  const std::vector<ThresholdSweepPoint> sweep = sweep_threshold_targets(m, 0, 5, 1, 99);
  c.req(sweep.size() == 99, "99 sweep points");
  bool ordered = true, flags_present = false;
  for (const auto& p : sweep) {
    ordered &= p.Q_opt < p.Q_cv && p.Q_opt < p.Q_ci;
    flags_present |= !p.regime_valid;
  }
  c.req(ordered, "Q_opt below both baselines across the sweep");
  c.req(flags_present, "regime flags surfaced");
  const ThresholdSweepPoint& full = sweep.back();
  c.req(full.R_f == 100.0, "final point at R_f = 100");
  c.req(std::fabs(full.saving_vs_cv - 0.128245) <= 1e-3, "full-swing cv saving 12.8%");
  c.req(!full.regime_valid && full.V_crossing.has_value(),
        "full swing flagged with a V crossing");

  // Context for the reference claims of ~27% (vs constant voltage) and ~35%
  // (vs constant current): neither maps to a specific target resistance from
  // the stated parameters alone, so the sweep reports computed savings and the
  // nearest matches instead of gating on those figures.
  const auto nearest = [&](double target) {
    const ThresholdSweepPoint* best = &sweep.front();
    for (const auto& p : sweep)
      if (std::fabs(p.saving_vs_cv - target) < std::fabs(best->saving_vs_cv - target))
        best = &p;
    return best;
  };
  const ThresholdSweepPoint* p27 = nearest(0.27);
  double max_ci = 0, min_ci = 1;
  for (const auto& p : sweep) {
    max_ci = std::max(max_ci, p.saving_vs_ci);
    min_ci = std::min(min_ci, p.saving_vs_ci);
  }
  c.info << "full swing: save_cv=" << full.saving_vs_cv << " save_ci=" << full.saving_vs_ci
         << " V_crossing=" << (full.V_crossing ? *full.V_crossing : -1)
         << "; ~27% cv saving nearest at R_f=" << p27->R_f << " (" << p27->saving_vs_cv
         << "); ci savings span [" << min_ci << ", " << max_ci
         << "] so the ~35% ci claim matches no sweep point; reference claims "
            "reported for context only, not desk-reproducible";
  return c.finish("A10", "threshold sweep reporting");
}

}  // namespace

std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(check_ratio_asymptotes());
  out.push_back(check_savings_bound());
  out.push_back(check_compliance_release());
  out.push_back(check_constant_power(seed));
  out.push_back(check_baseline_equality(seed));
  out.push_back(check_oracle_equivalence(seed));
  out.push_back(check_perturbation_optimality(seed));
  out.push_back(check_threshold_closed_form());
  out.push_back(check_reduction_and_shooting());
  out.push_back(check_sweep_reporting());
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace memopt
