#pragma once

#include <memopt/device_models.hpp>

namespace memopt {

/// Minimum-heat protocol for a charge-controlled memristor. Along the optimum
/// the quantity C1 = q̇·√R is conserved, so the drive power is the constant
/// C1² and Q = C1²·(t_f - t_i). C2 fixes the time origin of the first
/// integral: ∫√R dq evaluated along the path equals C1·t + C2.
struct IdealOptimum {
  Trajectory trajectory;
  double Q = 0;      // nJ
  double C1 = 0;     // mA·kΩ^(1/2); C1² is the constant power in mW
  double C2 = 0;
  bool degenerate = false;  // R_f == R_i: nothing to switch, Q = 0
};

/// Closed-form optimum for an affine memristor R = a + b·q. Supports both
/// switching directions (R_f < R_i drives negative current); a positivity scan
/// rejects boundary pairs whose connecting path would cross R = 0.
IdealOptimum solve_linear(const ChargeMemristor& model, const SwitchingTask& task,
                          int n = 1001);

/// Optimum for an arbitrary memristance via the first integral: builds
/// Φ(q) = ∫√R dq by adaptive quadrature (absolute tolerance phi_tol) and
/// inverts it on the time grid with bisection-safeguarded Newton (invert_tol).
/// Affine models have their boundary charges inferred; any other model must
/// carry q_i/q_f on the task.
IdealOptimum solve_general(const ChargeMemristor& model, const SwitchingTask& task,
                           int n = 1001, double phi_tol = 1e-10,
                           double invert_tol = 1e-12);

/// Constant-current baseline I = (q_f - q_i)/(t_f - t_i) for an affine model.
BaselineProtocol baseline_constant_current(const ChargeMemristor& model,
                                           const SwitchingTask& task, int n = 1001);

/// Constant-voltage baseline V = (R_f² - R_i²)/(2b·(t_f - t_i)) for an affine
/// model; dissipates exactly the same heat as the constant-current baseline.
BaselineProtocol baseline_constant_voltage(const ChargeMemristor& model,
                                           const SwitchingTask& task, int n = 1001);

/// Heat ratio Q_opt/Q_const for an affine device switched across a resistance
/// ratio rho = R_f/R_i:
///   ratio(rho) = (8/9)·(rho^(3/2) - 1)² / ((rho² - 1)·(rho - 1)),
/// continuous at rho = 1 with value 1, symmetric under rho ↔ 1/rho, and
/// approaching 8/9 at both extremes. Requires rho > 0.
double optimal_ratio(double rho);

/// Minimum of w1·Q + w2·T over both the protocol and the duration T for an
/// affine model. At the optimum w1·Q = w2·T (each term contributes equally).
struct TimeEnergyTradeoff {
  double w1 = 0;     // 1/nJ
  double w2 = 0;     // 1/µs
  double T_opt = 0;  // µs
  double Q_opt = 0;  // nJ
  IdealOptimum solution;  // optimal protocol on [t_i, t_i + T_opt]
};

TimeEnergyTradeoff solve_time_energy(const ChargeMemristor& model, double R_i,
                                     double R_f, double w1, double w2,
                                     double t_i = 0, int n = 1001);

}  // namespace memopt
