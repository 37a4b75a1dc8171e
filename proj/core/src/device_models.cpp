#include <memopt/device_models.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <memopt/numerics.hpp>

namespace memopt {

ChargeMemristor ChargeMemristor::linear(double offset_kohm, double slope_kohm_per_nC) {
  if (!std::isfinite(offset_kohm) || !std::isfinite(slope_kohm_per_nC))
    throw std::domain_error("ChargeMemristor::linear: parameters must be finite");
  ChargeMemristor m;
  m.linear_ = true;
  m.a_ = offset_kohm;
  m.b_ = slope_kohm_per_nC;
  m.fn_ = [a = offset_kohm, b = slope_kohm_per_nC](double q) { return a + b * q; };
  return m;
}

ChargeMemristor ChargeMemristor::from_function(std::function<double(double)> memristance_fn) {
  if (!memristance_fn)
    throw std::domain_error("ChargeMemristor::from_function: callable must be non-empty");
  ChargeMemristor m;
  m.fn_ = std::move(memristance_fn);
  return m;
}

double ChargeMemristor::memristance(double q) const {
  const double R = fn_(q);
  if (!(R > 0) || !std::isfinite(R))
    throw std::domain_error("ChargeMemristor::memristance: non-positive resistance " +
                            std::to_string(R) + " at q = " + std::to_string(q) + " nC");
  return R;
}

double ChargeMemristor::offset() const {
  if (!linear_)
    throw std::logic_error("ChargeMemristor::offset: model is not affine");
  return a_;
}

double ChargeMemristor::slope() const {
  if (!linear_)
    throw std::logic_error("ChargeMemristor::slope: model is not affine");
  return b_;
}

double ChargeMemristor::charge_of_resistance(double R) const {
  if (!linear_)
    throw std::domain_error(
        "ChargeMemristor::charge_of_resistance: general memristance is not inverted; "
        "supply q_i/q_f on the task instead");
  if (b_ == 0)
    throw std::domain_error(
        "ChargeMemristor::charge_of_resistance: constant memristance has no inverse");
  return (R - a_) / b_;
}

void ThresholdMemristiveModel::validate() const {
  if (!(R_on > 0) || !(R_off > R_on))
    throw std::domain_error("ThresholdMemristiveModel: need 0 < R_on < R_off");
  if (!(k > 0))
    throw std::domain_error("ThresholdMemristiveModel: need k > 0");
  if (!(V_off < 0) || !(V_on > 0))
    throw std::domain_error("ThresholdMemristiveModel: need V_off < 0 < V_on");
}

double ThresholdMemristiveModel::memristance(double x) const {
  const double R = R_on + x * delta_R();
  if (!(R > 0) || !std::isfinite(R))
    throw std::domain_error(
        "ThresholdMemristiveModel::memristance: non-positive resistance at x = " +
        std::to_string(x));
  return R;
}

double ThresholdMemristiveModel::state_rate(double /*x*/, double V) const {
  if (V > V_on) return k * (V - V_on);
  if (V < V_off) return k * (V - V_off);
  return 0;
}

double ThresholdMemristiveModel::x_of_resistance(double R) const {
  return (R - R_on) / delta_R();
}

void SwitchingTask::validate() const {
  if (!std::isfinite(t_i) || !std::isfinite(t_f) || !(t_f > t_i))
    throw std::domain_error("SwitchingTask: need finite t_i < t_f");
  if (!(R_i > 0) || !(R_f > 0) || !std::isfinite(R_i) || !std::isfinite(R_f))
    throw std::domain_error("SwitchingTask: boundary resistances must be positive");
  if (compliance && !(*compliance > 0))
    throw std::domain_error("SwitchingTask: compliance bound must be positive");
}

double Trajectory::dt() const {
  if (time.size() < 2)
    throw std::invalid_argument("Trajectory::dt: need at least 2 samples");
  return (time.back() - time.front()) / static_cast<double>(time.size() - 1);
}

bool Trajectory::all_regime_valid() const {
  for (const auto v : regime_valid)
    if (!v) return false;
  return true;
}

Trajectory Trajectory::from_samples(std::vector<double> time, std::vector<double> state,
                                    std::vector<double> resistance,
                                    std::vector<double> current,
                                    std::vector<std::uint8_t> regime_valid) {
  Trajectory traj;
  traj.time = std::move(time);
  traj.state = std::move(state);
  traj.resistance = std::move(resistance);
  traj.current = std::move(current);
  traj.regime_valid = std::move(regime_valid);
  if (traj.regime_valid.empty()) traj.regime_valid.assign(traj.time.size(), 1);

  traj.voltage.resize(traj.time.size());
  traj.power.resize(traj.time.size());
  for (std::size_t j = 0; j < traj.time.size(); ++j) {
    traj.voltage[j] = traj.resistance[j] * traj.current[j];
    traj.power[j] = traj.voltage[j] * traj.current[j];
  }
  validate_trajectory(traj);
  return traj;
}

void validate_trajectory(const Trajectory& traj) {
  const std::size_t n = traj.time.size();
  if (n < 2) throw std::invalid_argument("Trajectory: need at least 2 samples");
  if (traj.state.size() != n || traj.resistance.size() != n ||
      traj.voltage.size() != n || traj.current.size() != n ||
      traj.power.size() != n || traj.regime_valid.size() != n)
    throw std::invalid_argument("Trajectory: channel lengths disagree");

  const double dt = (traj.time.back() - traj.time.front()) / static_cast<double>(n - 1);
  if (!(dt > 0) || !std::isfinite(dt))
    throw std::invalid_argument("Trajectory: time grid must be increasing");
  const double span = std::abs(traj.time.back()) + std::abs(traj.time.front());
  for (std::size_t j = 0; j < n; ++j) {
    const double expected = traj.time.front() + static_cast<double>(j) * dt;
    if (std::abs(traj.time[j] - expected) > 1e-9 * std::max(1.0, span))
      throw std::invalid_argument("Trajectory: time grid is not uniform at sample " +
                                  std::to_string(j));
    if (!std::isfinite(traj.state[j]) || !std::isfinite(traj.current[j]))
      throw std::invalid_argument("Trajectory: non-finite sample at index " +
                                  std::to_string(j));
    if (!(traj.resistance[j] > 0) || !std::isfinite(traj.resistance[j]))
      throw std::invalid_argument("Trajectory: non-positive resistance at index " +
                                  std::to_string(j));
    if (traj.voltage[j] != traj.resistance[j] * traj.current[j])
      throw std::invalid_argument("Trajectory: voltage channel is not R*I at index " +
                                  std::to_string(j));
    if (traj.power[j] != traj.voltage[j] * traj.current[j])
      throw std::invalid_argument("Trajectory: power channel is not V*I at index " +
                                  std::to_string(j));
  }
}

double joule_heat(const Trajectory& traj) {
  if (traj.size() < 3)
    throw std::invalid_argument("joule_heat: need at least 3 samples");
  return quadrature(traj.power, traj.dt());
}

EnergyReport make_energy_report(double Q_opt, double Q_cc, double Q_cv,
                                double quadrature_Q, std::optional<double> oracle_Q) {
  EnergyReport report;
  report.Q_opt = Q_opt;
  report.Q_constant_current = Q_cc;
  report.Q_constant_voltage = Q_cv;
  const double eps = std::numeric_limits<double>::min();
  report.ratio_vs_constant_current = Q_cc > 0 ? Q_opt / Q_cc : 1.0;
  report.ratio_vs_constant_voltage = Q_cv > 0 ? Q_opt / Q_cv : 1.0;
  report.quadrature_residual =
      std::abs(quadrature_Q - Q_opt) / std::max(std::abs(Q_opt), eps);
  if (oracle_Q) {
    report.oracle_Q = oracle_Q;
    report.oracle_residual =
        std::abs(*oracle_Q - Q_opt) / std::max(std::abs(Q_opt), eps);
  }
  return report;
}

}  // namespace memopt
