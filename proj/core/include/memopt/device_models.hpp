#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace memopt {

/// Charge-controlled ("ideal") memristor: resistance is a function of the
/// charge q that has flowed through the device. Units: q in nC, R in kΩ.
class ChargeMemristor {
 public:
  /// Affine memristance R(q) = offset + slope·q.
  static ChargeMemristor linear(double offset_kohm, double slope_kohm_per_nC);
  /// Arbitrary memristance callable; boundary charges must then be supplied
  /// explicitly on every task (the library never inverts a general R).
  static ChargeMemristor from_function(std::function<double(double)> memristance_fn);

  /// R(q); throws std::domain_error when the model returns a non-positive value.
  double memristance(double q) const;

  bool is_linear() const { return linear_; }
  double offset() const;  // kΩ; affine form only
  double slope() const;   // kΩ/nC; affine form only

  /// Charge at which an affine model reaches resistance R.
  double charge_of_resistance(double R) const;

 private:
  ChargeMemristor() = default;
  std::function<double(double)> fn_;
  bool linear_ = false;
  double a_ = 0;
  double b_ = 0;
};

/// Voltage-threshold memristive device: R(x) = R_on + x·(R_off - R_on) with an
/// internal state x (nominally in [0, 1]) that moves only outside the dead zone
/// [V_off, V_on]:
///   dx/dt = k·(V - V_on)  for V > V_on,
///   dx/dt = 0             for V_off <= V <= V_on,
///   dx/dt = k·(V - V_off) for V < V_off.
struct ThresholdMemristiveModel {
  double R_on = 0;   // kΩ
  double R_off = 0;  // kΩ
  double k = 0;      // 1/(V·µs)
  double V_on = 0;   // V
  double V_off = 0;  // V

  /// Throws std::domain_error unless 0 < R_on < R_off, k > 0 and V_off < 0 < V_on.
  void validate() const;

  double delta_R() const { return R_off - R_on; }
  /// Affine memristance; x outside [0, 1] is a reportable regime violation for
  /// trajectories, not an evaluation error (the affine form is used verbatim).
  /// Throws std::domain_error when the result would be non-positive.
  double memristance(double x) const;
  /// State velocity with the dead zone; total in (x, V), continuous in V.
  double state_rate(double x, double V) const;
  double x_of_resistance(double R) const;
};

/// Boundary-value switching task: drive the device resistance from R_i at time
/// t_i to R_f at time t_f. Charge endpoints are required for non-invertible
/// memristance models; `compliance` bounds |I| when present.
struct SwitchingTask {
  double t_i = 0;  // µs
  double t_f = 0;  // µs
  double R_i = 0;  // kΩ
  double R_f = 0;  // kΩ
  std::optional<double> q_i;         // nC
  std::optional<double> q_f;         // nC
  std::optional<double> compliance;  // mA

  /// Throws std::domain_error on t_f <= t_i, non-positive resistances, or a
  /// non-positive compliance bound.
  void validate() const;
  double duration() const { return t_f - t_i; }
};

/// Uniformly sampled driving protocol. Voltage and power are always derived
/// from resistance and current (voltage = R·I, power = V·I) so the three
/// channels can never disagree. `regime_valid[j]` records whether sample j
/// respects the generating solver's validity assumptions (e.g. V > V_on and
/// x in [0, 1] for threshold-device protocols).
struct Trajectory {
  std::vector<double> time;          // µs
  std::vector<double> state;         // nC (charge) or dimensionless x
  std::vector<double> resistance;    // kΩ
  std::vector<double> voltage;       // V
  std::vector<double> current;       // mA
  std::vector<double> power;         // mW
  std::vector<std::uint8_t> regime_valid;

  std::size_t size() const { return time.size(); }
  double dt() const;
  bool all_regime_valid() const;

  /// Builds a trajectory from (time, state, resistance, current) samples,
  /// deriving voltage and power; validates uniform spacing, finiteness and
  /// positive resistance. An empty regime vector means all-valid.
  static Trajectory from_samples(std::vector<double> time, std::vector<double> state,
                                 std::vector<double> resistance,
                                 std::vector<double> current,
                                 std::vector<std::uint8_t> regime_valid = {});
};

/// Re-asserts every Trajectory invariant (sizes, uniform grid, finiteness,
/// positive resistance, voltage = R·I and power = V·I exactly); throws
/// std::invalid_argument naming the first violation.
void validate_trajectory(const Trajectory& traj);

/// Joule heat dissipated along a trajectory: composite Simpson integral of the
/// power channel. Requires at least 3 samples.
double joule_heat(const Trajectory& traj);

/// A baseline driving protocol together with its closed-form heat.
struct BaselineProtocol {
  Trajectory trajectory;
  double Q = 0;  // nJ
};

/// Energy bookkeeping for one solved task.
struct EnergyReport {
  double Q_opt = 0;               // nJ, optimal protocol
  double Q_constant_current = 0;  // nJ
  double Q_constant_voltage = 0;  // nJ
  double ratio_vs_constant_current = 1;  // Q_opt / Q_cc; 1 for degenerate tasks
  double ratio_vs_constant_voltage = 1;  // Q_opt / Q_cv; 1 for degenerate tasks
  std::optional<double> oracle_Q;        // nJ, independent discrete-path oracle
  double quadrature_residual = 0;        // |joule_heat(opt) - Q_opt| / max(|Q_opt|, eps)
  std::optional<double> oracle_residual; // |oracle_Q - Q_opt| / max(|Q_opt|, eps)
};

/// Assembles an EnergyReport with degenerate-safe ratios.
EnergyReport make_energy_report(double Q_opt, double Q_cc, double Q_cv,
                                double quadrature_Q,
                                std::optional<double> oracle_Q = std::nullopt);

}  // namespace memopt
