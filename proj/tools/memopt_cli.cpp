// memopt CLI: named scenarios, free-form JSON-config runs, and the built-in
// verification suite. Emits trajectories.csv / summary.json (+ ratios.csv for
// sweeps) into the chosen output directory.
//
// Exit codes: 0 success, 2 config error, 3 infeasible task, 4 numerical
// failure. Errors print a machine-readable object on stderr:
//   {"error":{"code":<int>,"kind":"config|infeasible|numerical","message":...}}

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <memopt/constrained_control.hpp>
#include <memopt/device_models.hpp>
#include <memopt/errors.hpp>
#include <memopt/ideal_optimal.hpp>
#include <memopt/memristive_optimal.hpp>
#include <memopt/numerics.hpp>
#include <memopt/verification.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace memopt;

namespace {

#ifndef MEMOPT_VERSION
#define MEMOPT_VERSION "0.0.0"
#endif

constexpr const char* kTrajectoryHeader =
    "t_us,q_nC_or_x,R_kOhm,V_V,I_mA,P_mW,protocol,regime_valid\n";
constexpr int kDefaultGrid = 1001;
constexpr int kDefaultOracleNodes = 128;
constexpr int kMaxOracleNodes = 1024;  // keeps the discrete minimizer tractable

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

[[noreturn]] void config_error(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

// ---------------------------------------------------------------------------
// Output assembly
// ---------------------------------------------------------------------------

struct RunOutput {
  std::string trajectories;           // full CSV including header
  json summary;                       // summary.json content
  std::optional<std::string> ratios;  // ratios.csv for sweep-style runs
};

void append_rows(std::string& csv, const Trajectory& tr, const std::string& protocol,
                 std::size_t first = 0) {
  validate_trajectory(tr);
  for (std::size_t j = first; j < tr.size(); ++j) {
    const bool ok = tr.regime_valid.empty() || tr.regime_valid[j] != 0;
    csv += fmt17(tr.time[j]);
    csv += ',';
    csv += fmt17(tr.state[j]);
    csv += ',';
    csv += fmt17(tr.resistance[j]);
    csv += ',';
    csv += fmt17(tr.voltage[j]);
    csv += ',';
    csv += fmt17(tr.current[j]);
    csv += ',';
    csv += fmt17(tr.power[j]);
    csv += ',';
    csv += protocol;
    csv += ok ? ",1\n" : ",0\n";
  }
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) config_error("cannot open '" + path.string() + "' for writing");
  f << body;
  if (!f) config_error("failed writing '" + path.string() + "'");
}

void write_outputs(const std::string& out_dir, const RunOutput& out) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) config_error("cannot create output directory '" + out_dir + "': " + ec.message());
  write_file(dir / "trajectories.csv", out.trajectories);
  write_file(dir / "summary.json", out.summary.dump(2) + "\n");
  if (out.ratios) write_file(dir / "ratios.csv", *out.ratios);
  std::cout << "wrote " << (dir / "trajectories.csv").string() << ", "
            << (dir / "summary.json").string();
  if (out.ratios) std::cout << ", " << (dir / "ratios.csv").string();
  std::cout << "\n";
}

json units_block() {
  return json{{"time", "us"},   {"resistance", "kOhm"}, {"voltage", "V"},
              {"current", "mA"}, {"charge", "nC"},       {"power", "mW"},
              {"energy", "nJ"}};
}

json report_block(const EnergyReport& r) {
  json j;
  j["Q_opt_nJ"] = r.Q_opt;
  j["Q_constant_current_nJ"] = r.Q_constant_current;
  j["Q_constant_voltage_nJ"] = r.Q_constant_voltage;
  j["ratio_vs_constant_current"] = r.ratio_vs_constant_current;
  j["ratio_vs_constant_voltage"] = r.ratio_vs_constant_voltage;
  j["quadrature_residual"] = r.quadrature_residual;
  j["oracle_Q_nJ"] = r.oracle_Q ? json(*r.oracle_Q) : json();
  j["oracle_residual"] = r.oracle_residual ? json(*r.oracle_residual) : json();
  return j;
}

json base_summary(const std::string& scenario, std::uint64_t seed, int grid_n,
                  const json& effective_config) {
  json s;
  s["artifact_version"] = MEMOPT_VERSION;
  s["scenario"] = scenario;
  s["seed"] = seed;
  s["grid_n"] = grid_n;
  s["config_digest"] = hex64(fnv1a(effective_config.dump()));
  s["units"] = units_block();
  s["effective_config"] = effective_config;
  return s;
}

const char* mode_name(ComplianceMode m) {
  switch (m) {
    case ComplianceMode::unconstrained:
      return "unconstrained";
    case ComplianceMode::clamped_then_interior:
      return "clamped-then-interior";
    case ComplianceMode::fully_clamped:
      return "fully-clamped";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Shared solver plumbing
// ---------------------------------------------------------------------------

struct IdealRun {
  EnergyReport report;
  json solution;                         // solver metadata
  json oracle;                           // oracle metadata (null when disabled)
  std::vector<std::pair<std::string, Trajectory>> protocols;
};

SwitchingTask without_compliance(SwitchingTask t) {
  t.compliance.reset();
  return t;
}

// Solves an ideal charge-controlled task (constrained or not), computes both
// baselines, and optionally cross-checks against the discrete-path minimizer.
IdealRun run_ideal(const ChargeMemristor& model, const SwitchingTask& task, int n,
                   bool general, bool oracle_on, int oracle_nodes) {
  IdealRun out;
  const SwitchingTask plain = without_compliance(task);
  const BaselineProtocol cc = baseline_constant_current(model, plain, n);
  const BaselineProtocol cv = baseline_constant_voltage(model, plain, n);

  double q_i, q_f;
  if (task.q_i && task.q_f) {
    q_i = *task.q_i;
    q_f = *task.q_f;
  } else {
    q_i = model.charge_of_resistance(task.R_i);
    q_f = model.charge_of_resistance(task.R_f);
  }

  double Q_opt = 0, quad_Q = 0;
  if (task.compliance) {
    const ConstrainedSolution sol = solve_linear_with_compliance(model, task, n, true);
    Q_opt = sol.Q;
    quad_Q = 0;
    if (sol.phase1) quad_Q += joule_heat(*sol.phase1);
    if (sol.phase2) quad_Q += joule_heat(*sol.phase2);
    if (sol.phase1) out.protocols.emplace_back("optimal", *sol.phase1);
    if (sol.phase2) {
      Trajectory tail = *sol.phase2;
      out.protocols.emplace_back("optimal", std::move(tail));
    }
    out.solution = {{"method", "compliance-constrained affine closed form"},
                    {"mode", mode_name(sol.mode)},
                    {"I_c_mA", sol.I_c},
                    {"t_c_us", sol.t_c},
                    {"R_c_kOhm", sol.R_c},
                    {"R_c_over_R_f", sol.R_c / sol.task.R_f},
                    {"t_c_over_t_f", sol.t_c / sol.task.t_f}};
    if (sol.diagnostic_other_root)
      out.solution["diagnostic_other_root_sqrt_kOhm"] = *sol.diagnostic_other_root;
  } else {
    const IdealOptimum opt =
        general ? solve_general(model, task, n) : solve_linear(model, task, n);
    Q_opt = opt.Q;
    quad_Q = joule_heat(opt.trajectory);
    out.solution = {{"method", general ? "general closed form (first integral)"
                                       : "affine closed form"},
                    {"C1", opt.C1},
                    {"C2", opt.C2},
                    {"degenerate", opt.degenerate}};
    out.protocols.emplace_back("optimal", opt.trajectory);
  }
  out.protocols.emplace_back("constant-voltage", cv.trajectory);
  out.protocols.emplace_back("constant-current", cc.trajectory);

  std::optional<double> oracle_Q;
  if (oracle_on) {
    const DiscretePath path = minimize_discrete_path(
        [&model](double q) { return model.memristance(q); }, q_i, q_f, task.t_i,
        task.t_f, oracle_nodes, task.compliance);
    oracle_Q = path.Q;
    out.oracle = {{"method", "discrete-path minimizer"},
                  {"nodes", oracle_nodes},
                  {"sweeps", path.sweeps},
                  {"Q_nJ", path.Q}};
    if (task.compliance)
      out.oracle["clamped_prefix_fraction"] =
          clamped_prefix_fraction(path, *task.compliance);
  }
  out.report = make_energy_report(Q_opt, cc.Q, cv.Q, quad_Q, oracle_Q);
  return out;
}

struct ThresholdRun {
  EnergyReport report;
  json solution;
  json oracle;
  std::vector<std::pair<std::string, Trajectory>> protocols;
  ThresholdOptimum optimum;
};

// Solves a threshold-device task with both baselines; the independent check is
// the indirect-method shooting solver, which shares no formulas with the
// closed-form path.
ThresholdRun run_threshold(const ThresholdMemristiveModel& m, const SwitchingTask& task,
                           int n, bool oracle_on) {
  ThresholdRun out;
  out.optimum = solve_threshold_closed_form(m, task, n);
  const ThresholdBaseline cv = baseline_threshold_constant_voltage(m, task, n);
  const ThresholdBaseline ci = baseline_threshold_constant_current(m, task, n);

  std::optional<double> oracle_Q;
  if (oracle_on) {
    const double x_i = m.x_of_resistance(task.R_i);
    const double x_f = m.x_of_resistance(task.R_f);
    const ShootingResult sh =
        solve_shooting(control_model(m), x_i, x_f, task.t_i, task.t_f, 1.0, n, 200);
    double sup = 0;
    for (std::size_t j = 0; j < sh.trajectory.size(); ++j)
      sup = std::max(sup, std::fabs(sh.trajectory.resistance[j] -
                                    out.optimum.trajectory.resistance[j]));
    oracle_Q = joule_heat(sh.trajectory);
    out.oracle = {{"method", "adjoint shooting"},
                  {"iterations", sh.iterations},
                  {"endpoint_error", sh.endpoint_error},
                  {"sup_rel_resistance_gap", sup / std::max(task.R_i, task.R_f)},
                  {"Q_nJ", *oracle_Q}};
  }
  out.report = make_energy_report(out.optimum.Q, ci.Q, cv.Q,
                                  joule_heat(out.optimum.trajectory), oracle_Q);
  out.solution = {{"method", "threshold closed form"},
                  {"C_per_us2", out.optimum.C},
                  {"t0_us", out.optimum.t0},
                  {"regime_valid", out.optimum.regime_valid},
                  {"V_crossing_us",
                   out.optimum.V_crossing ? json(*out.optimum.V_crossing) : json()},
                  {"V_cv_V", cv.drive},
                  {"I_cc_mA", ci.drive},
                  {"ordering_ok", out.optimum.Q < cv.Q && cv.Q < ci.Q}};
  out.protocols.emplace_back("optimal", out.optimum.trajectory);
  out.protocols.emplace_back("constant-voltage", cv.trajectory);
  out.protocols.emplace_back("constant-current", ci.trajectory);
  return out;
}

json tolerances_block(bool oracle_on) {
  json t;
  t["root_tol"] = 1e-12;
  t["shooting_tol"] = 1e-10;
  t["discrete_minimizer_tol"] = 1e-10;
  t["quadrature_consistency_rel"] = 1e-6;
  t["baseline_quadrature_rel"] = 1e-3;
  t["oracle_enabled"] = oracle_on;
  return t;
}

void fill_common(json& s, const EnergyReport& rep, const json& solution,
                 const json& oracle, bool oracle_on) {
  s["energy_report"] = report_block(rep);
  s["solution"] = solution;
  s["oracle"] = oracle.is_null() ? json() : oracle;
  s["tolerances"] = tolerances_block(oracle_on);
}

std::string protocols_csv(const std::vector<std::pair<std::string, Trajectory>>& ps) {
  std::string csv = kTrajectoryHeader;
  std::string last;
  for (const auto& [name, tr] : ps) {
    // Consecutive segments of the same protocol share their junction sample.
    const std::size_t first = (name == last) ? 1 : 0;
    append_rows(csv, tr, name, first);
    last = name;
  }
  return csv;
}

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

ThresholdMemristiveModel scenario_threshold_model() {
  ThresholdMemristiveModel m;
  m.R_on = 1;
  m.R_off = 100;
  m.k = 0.5;
  m.V_on = 1;
  m.V_off = -1;
  return m;
}

json threshold_model_json(const ThresholdMemristiveModel& m) {
  return json{{"kind", "threshold"},  {"R_on_kOhm", m.R_on}, {"R_off_kOhm", m.R_off},
              {"k_per_V_us", m.k},    {"V_on_V", m.V_on},    {"V_off_V", m.V_off}};
}

json task_json(const SwitchingTask& t) {
  json j{{"t_i_us", t.t_i}, {"t_f_us", t.t_f}, {"R_i_kOhm", t.R_i}, {"R_f_kOhm", t.R_f}};
  if (t.q_i) j["q_i_nC"] = *t.q_i;
  if (t.q_f) j["q_f_nC"] = *t.q_f;
  if (t.compliance) j["I_c_mA"] = *t.compliance;
  return j;
}

json solver_json(int n, bool oracle_on, int oracle_nodes) {
  return json{{"grid_n", n}, {"oracle", oracle_on}, {"oracle_nodes", oracle_nodes}};
}

RunOutput scenario_fig2(int n, std::uint64_t seed, bool oracle_on) {
  const ChargeMemristor model = ChargeMemristor::linear(1, 1);
  SwitchingTask task;
  task.t_i = 0;
  task.t_f = 1;
  task.R_i = 1;
  task.R_f = 100;
  const IdealRun run = run_ideal(model, task, n, false, oracle_on, kDefaultOracleNodes);

  const json cfg = {{"device",
                     {{"kind", "ideal-linear"}, {"R0_kOhm", 1.0}, {"slope_kOhm_per_nC", 1.0}}},
                    {"task", task_json(task)},
                    {"solver", solver_json(n, oracle_on, kDefaultOracleNodes)}};
  RunOutput out;
  out.summary = base_summary("fig2", seed, n, cfg);
  fill_common(out.summary, run.report, run.solution, run.oracle, oracle_on);
  out.trajectories = protocols_csv(run.protocols);

  // Heat-ratio sweep over nine decades of resistance swing rho = R_f/R_i.
  std::string r = "rho,Q_opt_over_Q_baseline\n";
  for (int j = 0; j <= 180; ++j) {
    const double e = -3.0 + 9.0 * j / 180.0;
    const double rho = std::pow(10.0, e);
    r += fmt17(rho);
    r += ',';
    r += fmt17(optimal_ratio(rho));
    r += '\n';
  }
  out.ratios = std::move(r);
  return out;
}

RunOutput scenario_fig3(int n, std::uint64_t seed, bool oracle_on) {
  const ThresholdMemristiveModel m = scenario_threshold_model();
  SwitchingTask task;
  task.t_i = 0;
  task.t_f = 5;
  task.R_i = 1;
  task.R_f = 100;
  const ThresholdRun run = run_threshold(m, task, n, oracle_on);

  const json cfg = {{"device", threshold_model_json(m)},
                    {"task", task_json(task)},
                    {"solver", solver_json(n, oracle_on, 0)}};
  RunOutput out;
  out.summary = base_summary("fig3", seed, n, cfg);
  fill_common(out.summary, run.report, run.solution, run.oracle, oracle_on);
  out.trajectories = protocols_csv(run.protocols);
  return out;
}

RunOutput scenario_fig4(int n, std::uint64_t seed, bool oracle_on) {
  const ChargeMemristor model = ChargeMemristor::linear(1, 100);
  SwitchingTask task;
  task.t_i = 0;
  task.t_f = 5;
  task.R_i = 1;
  task.R_f = 100;
  task.compliance = 0.25;
  IdealRun run = run_ideal(model, task, n, false, oracle_on, kDefaultOracleNodes);

  // Side-by-side unconstrained optimum for the comparison plot.
  const IdealOptimum unc = solve_linear(model, without_compliance(task), n);
  run.protocols.emplace_back("unconstrained", unc.trajectory);
  run.solution["Q_unconstrained_nJ"] = unc.Q;

  const json cfg = {{"device",
                     {{"kind", "ideal-linear"}, {"R0_kOhm", 1.0}, {"slope_kOhm_per_nC", 100.0}}},
                    {"task", task_json(task)},
                    {"solver", solver_json(n, oracle_on, kDefaultOracleNodes)}};
  RunOutput out;
  out.summary = base_summary("fig4", seed, n, cfg);
  fill_common(out.summary, run.report, run.solution, run.oracle, oracle_on);
  out.trajectories = protocols_csv(run.protocols);
  return out;
}

RunOutput scenario_sweep_threshold(int n, std::uint64_t seed, bool oracle_on) {
  const ThresholdMemristiveModel m = scenario_threshold_model();
  const double t_i = 0, t_f = 5, R_i = 1;
  const int points = 99;
  const std::vector<ThresholdSweepPoint> sweep =
      sweep_threshold_targets(m, t_i, t_f, R_i, points);

  std::string r =
      "R_f_kOhm,Q_opt_nJ,Q_cv_nJ,Q_ci_nJ,I_cc_mA,saving_vs_cv,saving_vs_ci,"
      "regime_valid,V_crossing_us\n";
  int invalid = 0;
  double max_save_cv = 0;
  for (const auto& p : sweep) {
    r += fmt17(p.R_f);
    r += ',';
    r += fmt17(p.Q_opt);
    r += ',';
    r += fmt17(p.Q_cv);
    r += ',';
    r += fmt17(p.Q_ci);
    r += ',';
    r += fmt17(p.I_cc);
    r += ',';
    r += fmt17(p.saving_vs_cv);
    r += ',';
    r += fmt17(p.saving_vs_ci);
    r += p.regime_valid ? ",1," : ",0,";
    if (p.V_crossing) r += fmt17(*p.V_crossing);
    r += '\n';
    invalid += p.regime_valid ? 0 : 1;
    max_save_cv = std::max(max_save_cv, p.saving_vs_cv);
  }

  // The standard trajectory files are emitted for the full-swing endpoint.
  SwitchingTask task;
  task.t_i = t_i;
  task.t_f = t_f;
  task.R_i = R_i;
  task.R_f = m.R_off;
  const ThresholdRun run = run_threshold(m, task, n, oracle_on);

  const json cfg = {{"device", threshold_model_json(m)},
                    {"task", task_json(task)},
                    {"sweep", {{"points", points}, {"R_f_max_kOhm", m.R_off}}},
                    {"solver", solver_json(n, oracle_on, 0)}};
  RunOutput out;
  out.summary = base_summary("sweep-threshold", seed, n, cfg);
  fill_common(out.summary, run.report, run.solution, run.oracle, oracle_on);
  out.summary["sweep"] = {
      {"points", points},
      {"regime_invalid_points", invalid},
      {"max_saving_vs_cv", max_save_cv},
      {"full_swing_saving_vs_cv", sweep.back().saving_vs_cv},
      {"full_swing_saving_vs_ci", sweep.back().saving_vs_ci}};
  out.trajectories = protocols_csv(run.protocols);
  out.ratios = std::move(r);
  return out;
}

RunOutput run_scenario(const std::string& name, int grid, std::uint64_t seed,
                       bool oracle_on) {
  const int n = grid > 0 ? grid : kDefaultGrid;
  if (name == "fig2") return scenario_fig2(n, seed, oracle_on);
  if (name == "fig3") return scenario_fig3(n, seed, oracle_on);
  if (name == "fig4") return scenario_fig4(n, seed, oracle_on);
  if (name == "sweep-threshold") return scenario_sweep_threshold(n, seed, oracle_on);
  config_error("unknown scenario '" + name +
               "' (expected fig2, fig3, fig4 or sweep-threshold)");
}

// ---------------------------------------------------------------------------
// Config-file runs
// ---------------------------------------------------------------------------

void require_keys(const json& j, const std::string& where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!j.is_object()) config_error(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : required) known = known || item.key() == k;
    for (const char* k : optional) known = known || item.key() == k;
    if (!known) config_error("unknown key '" + item.key() + "' in " + where);
  }
  for (const char* k : required)
    if (!j.contains(k)) config_error(where + " is missing required key '" + k + "'");
}

double num(const json& j, const std::string& where, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) config_error(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_error(where + "." + key + " must be finite");
  return d;
}

int integer(const json& j, const std::string& where, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) config_error(where + "." + key + " must be an integer");
  return v.get<int>();
}

RunOutput run_config_file(const std::string& path, int grid_flag, std::uint64_t seed,
                          bool no_oracle_flag, std::string& out_dir) {
  std::ifstream f(path);
  if (!f) config_error("cannot read config file '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    config_error("failed to parse '" + path + "': " + e.what());
  }
  require_keys(cfg, "config", {"device", "task"}, {"solver", "output"});

  // --- device block ---
  const json& dev = cfg.at("device");
  if (!dev.is_object() || !dev.contains("kind") || !dev.at("kind").is_string())
    config_error("device.kind must be one of ideal-linear, ideal-general, threshold");
  const std::string kind = dev.at("kind").get<std::string>();

  std::optional<ChargeMemristor> charge_model;
  std::optional<ThresholdMemristiveModel> threshold_model;
  json dev_norm;
  if (kind == "ideal-linear") {
    require_keys(dev, "device", {"kind", "R0_kOhm", "slope_kOhm_per_nC"}, {});
    const double R0 = num(dev, "device", "R0_kOhm");
    const double b = num(dev, "device", "slope_kOhm_per_nC");
    charge_model = ChargeMemristor::linear(R0, b);
    dev_norm = {{"kind", kind}, {"R0_kOhm", R0}, {"slope_kOhm_per_nC", b}};
  } else if (kind == "ideal-general") {
    require_keys(dev, "device", {"kind", "coeffs_kOhm"}, {});
    const json& cj = dev.at("coeffs_kOhm");
    if (!cj.is_array() || cj.empty())
      config_error("device.coeffs_kOhm must be a non-empty array of numbers");
    std::vector<double> coeffs;
    for (const auto& c : cj) {
      if (!c.is_number() || !std::isfinite(c.get<double>()))
        config_error("device.coeffs_kOhm entries must be finite numbers");
      coeffs.push_back(c.get<double>());
    }
    charge_model = ChargeMemristor::from_function([coeffs](double q) {
      double r = 0;
      for (std::size_t i = coeffs.size(); i-- > 0;) r = r * q + coeffs[i];
      return r;
    });
    dev_norm = {{"kind", kind}, {"coeffs_kOhm", coeffs}};
  } else if (kind == "threshold") {
    require_keys(dev, "device", {"kind", "R_on_kOhm", "R_off_kOhm", "k_per_V_us", "V_on_V"},
                 {"V_off_V"});
    ThresholdMemristiveModel m;
    m.R_on = num(dev, "device", "R_on_kOhm");
    m.R_off = num(dev, "device", "R_off_kOhm");
    m.k = num(dev, "device", "k_per_V_us");
    m.V_on = num(dev, "device", "V_on_V");
    m.V_off = dev.contains("V_off_V") ? num(dev, "device", "V_off_V") : -m.V_on;
    m.validate();
    threshold_model = m;
    dev_norm = threshold_model_json(m);
  } else {
    config_error("device.kind '" + kind +
                 "' is not supported (ideal-linear, ideal-general, threshold)");
  }

  // --- task block ---
  const json& tj = cfg.at("task");
  require_keys(tj, "task", {},
               {"t_i_us", "t_f_us", "R_i_kOhm", "R_f_kOhm", "q_i_nC", "q_f_nC", "x_i",
                "x_f", "I_c_mA", "w1", "w2"});
  SwitchingTask task;
  task.t_i = tj.contains("t_i_us") ? num(tj, "task", "t_i_us") : 0.0;

  const bool has_w1 = tj.contains("w1"), has_w2 = tj.contains("w2");
  if (has_w1 != has_w2) config_error("task.w1 and task.w2 must be given together");
  const bool tradeoff = has_w1;
  if (tradeoff && tj.contains("t_f_us"))
    config_error("task.t_f_us must be omitted for a time-energy tradeoff run");
  if (!tradeoff && !tj.contains("t_f_us"))
    config_error("task.t_f_us is required (or give weights w1, w2 for a tradeoff run)");
  if (!tradeoff) task.t_f = num(tj, "task", "t_f_us");

  const bool has_R = tj.contains("R_i_kOhm") || tj.contains("R_f_kOhm");
  const bool has_x = tj.contains("x_i") || tj.contains("x_f");
  if (has_R && has_x) config_error("task endpoints: give R_i/R_f or x_i/x_f, not both");
  if (has_x) {
    if (kind != "threshold") config_error("task.x_i/x_f apply to threshold devices only");
    if (!tj.contains("x_i") || !tj.contains("x_f"))
      config_error("task.x_i and task.x_f must be given together");
    const double x_i = num(tj, "task", "x_i"), x_f = num(tj, "task", "x_f");
    if (x_i < 0 || x_i > 1 || x_f < 0 || x_f > 1)
      config_error("task.x_i/x_f must lie in [0, 1]");
    task.R_i = threshold_model->memristance(x_i);
    task.R_f = threshold_model->memristance(x_f);
  } else {
    if (!tj.contains("R_i_kOhm") || !tj.contains("R_f_kOhm"))
      config_error("task.R_i_kOhm and task.R_f_kOhm are required");
    task.R_i = num(tj, "task", "R_i_kOhm");
    task.R_f = num(tj, "task", "R_f_kOhm");
  }
  if (tj.contains("q_i_nC") != tj.contains("q_f_nC"))
    config_error("task.q_i_nC and task.q_f_nC must be given together");
  if (tj.contains("q_i_nC")) {
    if (kind == "threshold") config_error("task.q_i_nC/q_f_nC apply to charge devices only");
    task.q_i = num(tj, "task", "q_i_nC");
    task.q_f = num(tj, "task", "q_f_nC");
  }
  if (tj.contains("I_c_mA")) {
    const double I_c = num(tj, "task", "I_c_mA");
    if (!(I_c > 0)) config_error("task.I_c_mA must be positive");
    task.compliance = I_c;
  }
  double w1 = 0, w2 = 0;
  if (tradeoff) {
    w1 = num(tj, "task", "w1");
    w2 = num(tj, "task", "w2");
    if (!(w1 > 0) || !(w2 > 0)) config_error("task.w1 and task.w2 must be positive");
    if (kind != "ideal-linear")
      config_error("time-energy tradeoff runs require the ideal-linear device");
    if (task.compliance)
      config_error("time-energy tradeoff runs do not support a compliance limit");
    if (task.q_i) config_error("tradeoff runs take R endpoints, not charges");
  }
  if (kind == "ideal-general" && !tradeoff && !task.q_i)
    config_error("ideal-general tasks require q_i_nC and q_f_nC");

  // --- solver block ---
  int n = kDefaultGrid;
  bool oracle_on = true;
  int oracle_nodes = kDefaultOracleNodes;
  json tol_extra;
  if (cfg.contains("solver")) {
    const json& sj = cfg.at("solver");
    require_keys(sj, "solver", {}, {"grid_n", "oracle", "oracle_nodes", "tolerances"});
    if (sj.contains("grid_n")) {
      n = integer(sj, "solver", "grid_n");
      if (n < 3) config_error("solver.grid_n must be at least 3");
    }
    if (sj.contains("oracle")) {
      if (!sj.at("oracle").is_boolean()) config_error("solver.oracle must be a boolean");
      oracle_on = sj.at("oracle").get<bool>();
    }
    if (sj.contains("oracle_nodes")) {
      oracle_nodes = integer(sj, "solver", "oracle_nodes");
      if (oracle_nodes < 8 || oracle_nodes > kMaxOracleNodes)
        config_error("solver.oracle_nodes must lie in [8, " +
                     std::to_string(kMaxOracleNodes) + "]");
    }
    if (sj.contains("tolerances")) {
      if (!sj.at("tolerances").is_object())
        config_error("solver.tolerances must be an object");
      tol_extra = sj.at("tolerances");
    }
  }
  if (grid_flag > 0) n = grid_flag;
  if (no_oracle_flag) oracle_on = false;

  // --- output block ---
  if (cfg.contains("output")) {
    const json& oj = cfg.at("output");
    require_keys(oj, "output", {}, {"dir"});
    if (oj.contains("dir")) {
      if (!oj.at("dir").is_string()) config_error("output.dir must be a string");
      if (out_dir.empty()) out_dir = oj.at("dir").get<std::string>();
    }
  }
  if (out_dir.empty()) out_dir = "out";

  // --- dispatch ---
  json norm_cfg = {{"device", dev_norm},
                   {"task", tradeoff ? json{{"t_i_us", task.t_i},
                                            {"R_i_kOhm", task.R_i},
                                            {"R_f_kOhm", task.R_f},
                                            {"w1", w1},
                                            {"w2", w2}}
                                     : task_json(task)},
                   {"solver", solver_json(n, oracle_on, oracle_nodes)}};
  if (!tol_extra.is_null()) norm_cfg["solver"]["tolerances"] = tol_extra;

  RunOutput out;
  out.summary = base_summary("config", seed, n, norm_cfg);
  out.summary["config_path"] = path;

  if (tradeoff) {
    const TimeEnergyTradeoff te =
        solve_time_energy(*charge_model, task.R_i, task.R_f, w1, w2, task.t_i, n);
    SwitchingTask induced;
    induced.t_i = task.t_i;
    induced.t_f = task.t_i + te.T_opt;
    induced.R_i = task.R_i;
    induced.R_f = task.R_f;
    IdealRun run = run_ideal(*charge_model, induced, n, false, oracle_on, oracle_nodes);
    run.solution = {{"method", "time-energy tradeoff"},
                    {"w1", w1},
                    {"w2", w2},
                    {"T_opt_us", te.T_opt},
                    {"Q_opt_nJ", te.Q_opt},
                    {"balance_residual",
                     std::fabs(w1 * te.Q_opt - w2 * te.T_opt) /
                         std::max(w1 * te.Q_opt, 1e-300)}};
    fill_common(out.summary, run.report, run.solution, run.oracle, oracle_on);
    out.trajectories = protocols_csv(run.protocols);
    return out;
  }

  if (kind == "threshold") {
    // The compliance limit is reported against the unconstrained optimum for
    // threshold devices rather than enforced.
    const std::optional<double> I_c = task.compliance;
    SwitchingTask plain = without_compliance(task);
    const ThresholdRun run = run_threshold(*threshold_model, plain, n, oracle_on);
    fill_common(out.summary, run.report, run.solution, run.oracle, oracle_on);
    if (I_c) {
      double peak = 0;
      for (double I : run.optimum.trajectory.current) peak = std::max(peak, std::fabs(I));
      out.summary["compliance"] = {{"requested_mA", *I_c},
                                   {"peak_current_mA", peak},
                                   {"satisfied", peak <= *I_c}};
    }
    out.trajectories = protocols_csv(run.protocols);
    return out;
  }

  if (task.compliance && kind != "ideal-linear")
    config_error("compliance-constrained control requires the ideal-linear device");
  const IdealRun run = run_ideal(*charge_model, task, n, kind == "ideal-general",
                                 oracle_on, oracle_nodes);
  fill_common(out.summary, run.report, run.solution, run.oracle, oracle_on);
  out.trajectories = protocols_csv(run.protocols);
  return out;
}

// ---------------------------------------------------------------------------
// verify subcommand
// ---------------------------------------------------------------------------

int do_verify(std::uint64_t seed) {
  const std::vector<CheckResult> results = run_acceptance_checks(seed);
  std::printf("%-4s %-6s %s\n", "ID", "RESULT", "CHECK");
  int passed = 0;
  std::string failed_ids;
  for (const auto& r : results) {
    std::printf("%-4s %-6s %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL",
                r.name.c_str());
    if (!r.pass) {
      std::printf("     %s\n", r.detail.c_str());
      failed_ids += (failed_ids.empty() ? "" : ", ") + r.id;
    } else {
      ++passed;
    }
  }
  std::printf("%d/%zu checks passed (seed %" PRIu64 ")\n", passed, results.size(), seed);
  if (passed == static_cast<int>(results.size())) return 0;
  json err;
  err["error"] = {{"code", 4},
                  {"kind", "numerical"},
                  {"message", "acceptance checks failed: " + failed_ids}};
  std::cerr << err.dump() << "\n";
  return 4;
}

int emit_error(int code, const std::string& kind, const std::string& message) {
  json err;
  err["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memopt: energy-optimal switching protocols for memristive devices"};
  app.require_subcommand(1);

  std::string scenario_name;
  std::string config_path;
  std::string out_dir_scenario = "out";
  std::string out_dir_run;  // empty: defer to config's output.dir, then "out"
  int grid = 0;
  std::uint64_t seed = 42;
  bool no_oracle = false;

  CLI::App* sc = app.add_subcommand("scenario", "Reproduce a named scenario");
  sc->add_option("name", scenario_name, "fig2 | fig3 | fig4 | sweep-threshold")
      ->required();
  sc->add_option("--out", out_dir_scenario, "Output directory (default: out)");
  sc->add_option("--grid", grid, "Trajectory grid size N (default: 1001)");
  sc->add_option("--seed", seed, "Seed recorded in summary.json (default: 42)");
  sc->add_flag("--no-oracle", no_oracle, "Skip the independent numerical cross-check");

  CLI::App* rn = app.add_subcommand("run", "Solve a task described by a JSON config");
  rn->add_option("config", config_path, "Path to the JSON config file")->required();
  rn->add_option("--out", out_dir_run, "Output directory (overrides output.dir)");
  rn->add_option("--grid", grid, "Trajectory grid size N (overrides solver.grid_n)");
  rn->add_option("--seed", seed, "Seed recorded in summary.json (default: 42)");
  rn->add_flag("--no-oracle", no_oracle, "Skip the independent numerical cross-check");

  CLI::App* vf = app.add_subcommand("verify", "Run the acceptance checks");
  vf->add_option("--seed", seed, "Seed for the randomized checks (default: 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(2, "config", e.what());
  }

  try {
    if (sc->parsed()) {
      write_outputs(out_dir_scenario, run_scenario(scenario_name, grid, seed, !no_oracle));
      return 0;
    }
    if (rn->parsed()) {
      std::string dir = out_dir_run;
      const RunOutput out = run_config_file(config_path, grid, seed, no_oracle, dir);
      write_outputs(dir, out);
      return 0;
    }
    return do_verify(seed);
  } catch (const infeasible_error& e) {
    return emit_error(3, "infeasible", e.what());
  } catch (const numerical_error& e) {
    return emit_error(4, "numerical", e.what());
  } catch (const nlohmann::json::exception& e) {
    return emit_error(2, "config", e.what());
  } catch (const std::invalid_argument& e) {
    return emit_error(2, "config", e.what());
  } catch (const std::domain_error& e) {
    return emit_error(2, "config", e.what());
  } catch (const std::exception& e) {
    return emit_error(4, "numerical", e.what());
  }
}
