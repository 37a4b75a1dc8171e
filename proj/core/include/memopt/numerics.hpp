#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace memopt {

// Working units throughout the library: resistance kΩ, current mA, voltage V
// (= kΩ·mA), time µs, charge nC (= mA·µs), power mW, energy nJ (= mW·µs).

/// Composite Simpson integral of uniformly spaced samples with spacing dt.
/// An even sample count gets a trapezoid fallback on the final panel.
/// Requires at least 3 samples.
double quadrature(const std::vector<double>& samples, double dt);

/// Adaptive Simpson integration of fn over [lo, hi] to absolute tolerance tol.
double integrate_adaptive(const std::function<double(double)>& fn, double lo,
                          double hi, double tol = 1e-10, int max_depth = 50);

/// Bisection on a bracketing interval: g(lo) and g(hi) must differ in sign.
/// Converges to interval width tol (absolute); deterministic.
double find_root_bracketed(const std::function<double(double)>& g, double lo,
                           double hi, double tol = 1e-12, int max_iter = 200);

/// Classical fixed-step 4th-order Runge–Kutta integration of dy/dt = rate(t, y),
/// returning y sampled on the uniform n-point grid over [t0, t1]. Each grid
/// interval is subdivided into `substeps` internal steps; rate must be smooth
/// across every step (split integrations at known kinks).
std::vector<double> integrate_ode(const std::function<double(double, double)>& rate,
                                  double y0, double t0, double t1, int n,
                                  int substeps = 1);

/// A charge path on a uniform time grid, with its discrete heat
/// Q = Σ R((q_j+q_{j+1})/2)·((q_{j+1}-q_j)/Δt)²·Δt.
struct DiscretePath {
  std::vector<double> times;  // µs
  std::vector<double> nodes;  // nC; endpoints fixed by the task
  double Q = 0;               // nJ
  int sweeps = 0;             // coordinate sweeps spent by the minimizer
};

/// Discrete heat of an arbitrary node vector under memristance R(q).
double discrete_path_heat(const std::function<double(double)>& R,
                          const std::vector<double>& nodes, double dt);

/// Direct minimization of the discrete heat over the interior nodes by
/// coordinate-wise safeguarded Newton sweeps, starting from the straight-line
/// (constant-current) path. When a compliance bound I_c is given, every node
/// update is projected so both adjacent slopes stay within [-I_c, I_c]; the
/// task is rejected as infeasible if |q_f - q_i|/(t_f - t_i) > I_c.
/// Iterates until the largest node move in a sweep falls below
/// tol·|q_f - q_i| (or max_sweeps). Q never increases between sweeps.
DiscretePath minimize_discrete_path(const std::function<double(double)>& R,
                                    double q_i, double q_f, double t_i, double t_f,
                                    int n, std::optional<double> I_c = std::nullopt,
                                    double tol = 1e-10, int max_sweeps = 400000);

/// Fraction of leading segments whose |slope| sits at the compliance bound
/// (within rel. slack 1e-6); diagnostic for clamped-then-interior solutions.
double clamped_prefix_fraction(const DiscretePath& path, double I_c);

}  // namespace memopt
