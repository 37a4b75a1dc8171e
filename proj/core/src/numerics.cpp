#include <memopt/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <memopt/errors.hpp>

namespace memopt {

double quadrature(const std::vector<double>& samples, double dt) {
  const std::size_t n = samples.size();
  if (n < 3)
    throw std::invalid_argument("quadrature: need at least 3 samples, got " +
                                std::to_string(n));
  if (!(dt > 0) || !std::isfinite(dt))
    throw std::invalid_argument("quadrature: sample spacing must be positive");
  double sum = 0;
  std::size_t j = 0;
  for (; j + 2 < n; j += 2)
    sum += (dt / 3.0) * (samples[j] + 4.0 * samples[j + 1] + samples[j + 2]);
  if (j == n - 2)  // even count: one segment left over
    sum += 0.5 * dt * (samples[j] + samples[j + 1]);
  return sum;
}

namespace {

double adaptive_simpson_rec(const std::function<double(double)>& fn, double lo,
                            double hi, double f_lo, double f_mid, double f_hi,
                            double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double f_lmid = fn(lmid);
  const double f_rmid = fn(rmid);
  const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lmid + f_mid);
  const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rmid + f_hi);
  const double delta = left + right - whole;
  if (depth <= 0)
    throw numerical_error("integrate_adaptive: refinement limit reached");
  if (std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(fn, lo, mid, f_lo, f_lmid, f_mid, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(fn, mid, hi, f_mid, f_rmid, f_hi, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& fn, double lo,
                          double hi, double tol, int max_depth) {
  if (lo == hi) return 0;
  const double mid = 0.5 * (lo + hi);
  const double f_lo = fn(lo), f_mid = fn(mid), f_hi = fn(hi);
  const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  return adaptive_simpson_rec(fn, lo, hi, f_lo, f_mid, f_hi, whole, tol, max_depth);
}

double find_root_bracketed(const std::function<double(double)>& g, double lo,
                           double hi, double tol, int max_iter) {
  if (lo > hi) std::swap(lo, hi);
  double g_lo = g(lo);
  double g_hi = g(hi);
  if (g_lo == 0) return lo;
  if (g_hi == 0) return hi;
  if (std::signbit(g_lo) == std::signbit(g_hi))
    throw numerical_error("find_root_bracketed: endpoints do not bracket a root");
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
    const double g_mid = g(mid);
    if (g_mid == 0) return mid;
    if (std::signbit(g_mid) == std::signbit(g_lo)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> integrate_ode(const std::function<double(double, double)>& rate,
                                  double y0, double t0, double t1, int n,
                                  int substeps) {
  if (n < 2) throw std::invalid_argument("integrate_ode: need at least 2 grid points");
  if (substeps < 1) throw std::invalid_argument("integrate_ode: substeps must be >= 1");
  std::vector<double> y(static_cast<std::size_t>(n));
  y[0] = y0;
  const double dt = (t1 - t0) / (n - 1);
  const double h = dt / substeps;
  double yi = y0;
  for (int i = 0; i + 1 < n; ++i) {
    double t = t0 + i * dt;
    for (int s = 0; s < substeps; ++s) {
      const double k1 = rate(t, yi);
      const double k2 = rate(t + 0.5 * h, yi + 0.5 * h * k1);
      const double k3 = rate(t + 0.5 * h, yi + 0.5 * h * k2);
      const double k4 = rate(t + h, yi + h * k3);
      yi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
    }
    y[static_cast<std::size_t>(i) + 1] = yi;
  }
  return y;
}

double discrete_path_heat(const std::function<double(double)>& R,
                          const std::vector<double>& nodes, double dt) {
  if (nodes.size() < 2)
    throw std::invalid_argument("discrete_path_heat: need at least 2 nodes");
  double sum = 0;
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const double dq = nodes[j + 1] - nodes[j];
    sum += R(0.5 * (nodes[j] + nodes[j + 1])) * dq * dq / dt;
  }
  return sum;
}

namespace {

// Heat carried by the two segments adjacent to interior node y between fixed
// neighbors (left, right).
inline double local_heat(const std::function<double(double)>& R, double left,
                         double y, double right, double dt) {
  const double d1 = y - left, d2 = right - y;
  return (R(0.5 * (left + y)) * d1 * d1 + R(0.5 * (y + right)) * d2 * d2) / dt;
}

inline double local_heat_grad(const std::function<double(double)>& R, double left,
                              double y, double right, double dt, double hq) {
  const double d1 = y - left, d2 = right - y;
  const double m1 = 0.5 * (left + y), m2 = 0.5 * (y + right);
  const double dR1 = (R(m1 + hq) - R(m1 - hq)) / (2.0 * hq);
  const double dR2 = (R(m2 + hq) - R(m2 - hq)) / (2.0 * hq);
  return (0.5 * dR1 * d1 * d1 + 2.0 * R(m1) * d1 - 0.5 * dR2 * d2 * d2 -
          2.0 * R(m2) * d2) /
         dt;
}

}  // namespace

DiscretePath minimize_discrete_path(const std::function<double(double)>& R,
                                    double q_i, double q_f, double t_i, double t_f,
                                    int n, std::optional<double> I_c, double tol,
                                    int max_sweeps) {
  if (n < 3) throw std::invalid_argument("minimize_discrete_path: need n >= 3 nodes");
  if (!(t_f > t_i))
    throw std::invalid_argument("minimize_discrete_path: need t_f > t_i");
  const double dt = (t_f - t_i) / (n - 1);
  const double swing = std::abs(q_f - q_i);
  if (I_c) {
    if (!(*I_c > 0))
      throw std::invalid_argument("minimize_discrete_path: compliance must be positive");
    if (swing / (t_f - t_i) > *I_c * (1.0 + 1e-12))
      throw infeasible_error(
          "minimize_discrete_path: mean slope exceeds the compliance bound");
  }

  DiscretePath path;
  path.times.resize(static_cast<std::size_t>(n));
  path.nodes.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    path.times[static_cast<std::size_t>(j)] = t_i + j * dt;
    path.nodes[static_cast<std::size_t>(j)] =
        q_i + (q_f - q_i) * (static_cast<double>(j) / (n - 1));
  }

  const double scale = std::max(1.0, std::max(std::abs(q_i), std::abs(q_f)));
  const double hq = 1e-6 * scale;   // memristance-slope probe step
  const double move_tol = tol * std::max(swing, scale * 1e-6);
  auto& y = path.nodes;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double max_move = 0;
    // Alternate sweep direction; symmetric sweeps propagate boundary
    // information both ways and roughly halve the iteration count.
    const bool forward = (sweep % 2 == 0);
    for (int idx = 1; idx + 1 < n; ++idx) {
      const int j = forward ? idx : n - 1 - idx;
      const double left = y[static_cast<std::size_t>(j - 1)];
      const double right = y[static_cast<std::size_t>(j + 1)];
      double yj = y[static_cast<std::size_t>(j)];
      const double f0 = local_heat(R, left, yj, right, dt);

      // Safeguarded Newton on the local gradient (quadratic in yj for affine R).
      double cand = yj;
      for (int step = 0; step < 3; ++step) {
        const double g = local_heat_grad(R, left, cand, right, dt, hq);
        const double hy = 1e-7 * std::max(scale, std::abs(cand));
        const double g_hi = local_heat_grad(R, left, cand + hy, right, dt, hq);
        const double g_lo = local_heat_grad(R, left, cand - hy, right, dt, hq);
        const double curv = (g_hi - g_lo) / (2.0 * hy);
        if (!(curv > 0)) break;  // non-convex spot: keep the best point so far
        const double limit = std::abs(right - left) + dt;  // step trust region
        cand -= std::clamp(g / curv, -limit, limit);
      }
      if (I_c) {
        const double lo = std::max(left, right) - *I_c * dt;
        const double hi = std::min(left, right) + *I_c * dt;
        cand = std::clamp(cand, lo, hi);
      }
      // Accept only when the local heat does not grow (keeps Q monotone).
      double accepted = yj;
      double f_cand = local_heat(R, left, cand, right, dt);
      for (int halve = 0; halve < 30 && f_cand > f0; ++halve) {
        cand = 0.5 * (cand + yj);
        f_cand = local_heat(R, left, cand, right, dt);
      }
      if (f_cand <= f0) accepted = cand;
      max_move = std::max(max_move, std::abs(accepted - yj));
      y[static_cast<std::size_t>(j)] = accepted;
    }
    if (max_move < move_tol) {
      ++sweep;
      break;
    }
  }

  path.sweeps = sweep;
  path.Q = discrete_path_heat(R, y, dt);
  return path;
}

double clamped_prefix_fraction(const DiscretePath& path, double I_c) {
  if (path.nodes.size() < 2 || !(I_c > 0)) return 0;
  const double dt = path.times[1] - path.times[0];
  std::size_t clamped = 0;
  for (std::size_t j = 0; j + 1 < path.nodes.size(); ++j) {
    const double slope = std::abs(path.nodes[j + 1] - path.nodes[j]) / dt;
    if (slope < I_c * (1.0 - 1e-6)) break;
    ++clamped;
  }
  return static_cast<double>(clamped) / static_cast<double>(path.nodes.size() - 1);
}

}  // namespace memopt
