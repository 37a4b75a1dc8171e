#pragma once

#include <memopt/device_models.hpp>

namespace memopt {

/// First-order controlled state model dx/dt = f(x, V) with memristance R(x),
/// as used by the necessary-condition and shooting machinery. All callables
/// must be non-empty except control_from_adjoint, which (when present) solves
/// the stationarity condition Λ·R(x)·∂f/∂V = 2·λ0·V for V in closed form;
/// otherwise a guarded Newton solve is used.
struct FirstOrderControlModel {
  std::function<double(double, double)> f;    // (x, V) -> dx/dt, 1/µs
  std::function<double(double, double)> f_V;  // ∂f/∂V
  std::function<double(double, double)> f_x;  // ∂f/∂x
  std::function<double(double)> R;            // kΩ
  std::function<double(double)> dR_dx;        // kΩ per unit x
  std::function<double(double, double)> control_from_adjoint;  // (x, Λ) -> V
};

/// Threshold device restricted to its V > V_on branch, f = k·(V - V_on).
/// The dead zone is deliberately ignored here: optimality conditions are
/// evaluated on the branch formulas, and regime flags report violations.
FirstOrderControlModel control_model(const ThresholdMemristiveModel& m);

/// Charge-controlled memristor recast as a state model with x = q and
/// f = V/R(x); its stationarity condition reduces to Λ = 2·λ0·V.
FirstOrderControlModel control_model(const ChargeMemristor& m);

/// Sampled solution of the optimality system (state, control, multiplier).
/// lambda0 is the cost multiplier; 1 in normal operation.
struct AdjointState {
  double lambda0 = 1.0;
  std::vector<double> time;    // µs, uniform
  std::vector<double> x;
  std::vector<double> V;       // V
  std::vector<double> Lambda;  // adjoint multiplier
};

/// Sup-norm residuals of the three necessary conditions, each normalized by
/// the sup of its defining right-hand side (so values are relative):
///   stationarity: Λ·R(x)·∂f/∂V = 2·λ0·V,
///   adjoint:      dΛ/dt = -λ0·V²·R'(x)/R(x)² - Λ·∂f/∂x,
///   state:        dx/dt = f(x, V).
/// Time derivatives are taken with 4th-order finite-difference stencils
/// (one-sided at the grid edges), so sharply varying multipliers need a dense
/// grid for the adjoint residual to be meaningful.
struct ResidualReport {
  double stationarity = 0;
  double adjoint = 0;
  double state = 0;
  double x_i_error = 0;  // |x(t_i) - x_i|
  double x_f_error = 0;  // |x(t_f) - x_f|
};

/// Evaluates the residuals of a candidate solution against boundary values.
/// Throws numerical_error when ∂f/∂V vanishes anywhere on the grid (singular
/// control: the stationarity condition cannot be solved for Λ).
ResidualReport necessary_conditions_residual(const FirstOrderControlModel& m,
                                             const AdjointState& s, double x_i,
                                             double x_f);

/// Closed-form optimal protocol for the threshold device on its V > V_on
/// branch: R(t) = C·ΔR·(t+t0)² + k·ΔR·V_on·(t+t0) with V affine and
/// I ∝ 1/(t+t0). `regime_valid` is false when V(t) falls to V_on inside the
/// window (time reported in V_crossing) or when x leaves [0, 1]; the formulas
/// are still evaluated verbatim in that case.
struct ThresholdOptimum {
  Trajectory trajectory;
  double Q = 0;   // nJ
  double C = 0;   // 1/µs², negative-branch root of the boundary quadratic
  double t0 = 0;  // µs
  bool regime_valid = true;
  std::optional<double> V_crossing;  // µs
  AdjointState adjoint;              // sampled closed-form multiplier Λ = 2V/(k·R)
};

ThresholdOptimum solve_threshold_closed_form(const ThresholdMemristiveModel& m,
                                             const SwitchingTask& task, int n = 1001);

/// Constant-voltage baseline V = V_on + (x_f - x_i)/(k·(t_f - t_i)); the state
/// moves linearly, so Q = V²·T·ln(R_f/R_i)/(R_f - R_i). A zero-swing task
/// degenerates to V = V_on (dead-zone boundary) and is flagged on the result.
struct ThresholdBaseline {
  Trajectory trajectory;
  double Q = 0;        // nJ
  double drive = 0;    // V for constant-voltage, mA for constant-current
  bool degenerate = false;
};

ThresholdBaseline baseline_threshold_constant_voltage(const ThresholdMemristiveModel& m,
                                                      const SwitchingTask& task,
                                                      int n = 1001);

/// Constant-current baseline: under constant I the resistance obeys
/// R(t) = V_on/I + (R_i - V_on/I)·exp(k·ΔR·I·(t - t_i)), and the current is
/// root-solved so R(t_f) = R_f. The root sits extremely close to V_on/R_i for
/// fast devices, so the solve is parameterized by eps = I - V_on/R_i with a
/// geometrically expanded bracket. Q = I·(V_on·T + (R_f - R_i)/(k·ΔR)).
ThresholdBaseline baseline_threshold_constant_current(const ThresholdMemristiveModel& m,
                                                      const SwitchingTask& task,
                                                      int n = 1001);

/// Two-point shooting on the optimality system: integrates (x, Λ) with
/// fixed-step 4th-order stepping (`substeps` internal steps per grid interval)
/// and secant iteration on Λ(t_i) until the endpoint miss |x(t_f) - x_f| falls
/// below tol (scaled by the boundary magnitude). λ0 is fixed to 1. Throws
/// infeasible_error when the target is unreachable: the secant exhausts
/// max_iter without bringing the miss at least to 1e-8.
struct ShootingResult {
  AdjointState state;
  Trajectory trajectory;   // reconstructed via R(x), I = V/R
  ResidualReport residuals;
  int iterations = 0;
  double endpoint_error = 0;
};

ShootingResult solve_shooting(const FirstOrderControlModel& m, double x_i, double x_f,
                              double t_i, double t_f, double lambda_guess,
                              int n = 1001, int substeps = 200, double tol = 1e-10,
                              int max_iter = 120);

/// One point of a target-resistance sweep comparing the optimal protocol
/// against both baselines (savings are 1 - Q_opt/Q_baseline).
struct ThresholdSweepPoint {
  double R_f = 0;        // kΩ
  double Q_opt = 0;      // nJ
  double Q_cv = 0;       // nJ
  double Q_ci = 0;       // nJ
  double I_cc = 0;       // mA, root-solved baseline current
  double saving_vs_cv = 0;
  double saving_vs_ci = 0;
  bool regime_valid = true;
  std::optional<double> V_crossing;  // µs
};

/// Sweeps R_f across (R_i, R_off] on a uniform grid of `points` targets.
std::vector<ThresholdSweepPoint> sweep_threshold_targets(
    const ThresholdMemristiveModel& m, double t_i, double t_f, double R_i,
    int points = 99);

}  // namespace memopt
