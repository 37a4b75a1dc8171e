#pragma once

#include <memopt/device_models.hpp>

namespace memopt {

/// Structure of a compliance-limited optimal protocol.
enum class ComplianceMode {
  unconstrained,          // the free optimum never exceeds I_c
  clamped_then_interior,  // I = I_c up to t_c, constant-power arc afterwards
  fully_clamped,          // boundary drift equals I_c exactly: I = I_c throughout
};

/// Minimizer of R·u² - p·u over |u| <= I_c: the interior stationary point
/// p/(2R) when it fits, otherwise the active bound with the sign of p.
double pontryagin_control(double p, double R, double I_c);

/// Optimal protocol for an affine memristor R = a + b·q under |I| <= I_c.
/// In clamped_then_interior mode the two phases are sampled separately (each
/// on its own uniform grid) because the switch instant t_c is not a grid
/// point of the overall window; resistance and current are continuous at t_c.
struct ConstrainedSolution {
  ComplianceMode mode = ComplianceMode::unconstrained;
  double t_c = 0;  // µs; equals t_i when the constraint never binds
  double R_c = 0;  // kΩ; resistance where the clamp releases
  double Q = 0;    // nJ
  double I_c = 0;  // mA
  double a = 0;    // kΩ
  double b = 0;    // kΩ/nC
  SwitchingTask task;
  std::optional<Trajectory> phase1;  // clamped segment (absent when unconstrained)
  std::optional<Trajectory> phase2;  // interior segment (or the whole protocol)
  /// Larger positive root of the release cubic, computed only on request to
  /// confirm it lies beyond the admissible window.
  std::optional<double> diagnostic_other_root;  // in units of √R_c
};

/// Solves the compliance-limited switching problem for an affine model with
/// b > 0 and R_f > R_i. Mode selection: the boundary drift (q_f-q_i)/(t_f-t_i)
/// equal to I_c (to 1e-9 relative) gives fully_clamped; a drift above I_c is
/// infeasible; otherwise the free optimum is returned unless its peak current
/// I(t_i) exceeds I_c, in which case the clamp holds until the release
/// resistance R_c — the in-bracket root of x³ - 3·S·x + 2·R_f^(3/2) = 0 in
/// x = √R_c with S = R_i + b·I_c·(t_f - t_i) — and the constant-power arc
/// finishes the switch.
ConstrainedSolution solve_linear_with_compliance(const ChargeMemristor& model,
                                                 const SwitchingTask& task,
                                                 int n = 1001,
                                                 bool diagnostics = false);

/// Total heat of a constrained solution from its closed forms:
/// I_c²·(R_i+R_c)/2·(t_c-t_i) for the clamped phase (trapezoid of an affine R
/// is exact) plus (4/(9b²))·(R_f^(3/2)-R_c^(3/2))²/(t_f-t_c) for the interior.
double constrained_energy(const ConstrainedSolution& sol);

}  // namespace memopt
