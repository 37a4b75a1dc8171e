#include <benchmark/benchmark.h>

#include <memopt/constrained_control.hpp>
#include <memopt/device_models.hpp>
#include <memopt/ideal_optimal.hpp>
#include <memopt/memristive_optimal.hpp>
#include <memopt/numerics.hpp>

using namespace memopt;

namespace {

SwitchingTask task(double t_f, double R_i, double R_f) {
  SwitchingTask t;
  t.t_i = 0;
  t.t_f = t_f;
  t.R_i = R_i;
  t.R_f = R_f;
  return t;
}

ThresholdMemristiveModel threshold_model() {
  ThresholdMemristiveModel m;
  m.R_on = 1;
  m.R_off = 100;
  m.k = 0.5;
  m.V_on = 1;
  m.V_off = -1;
  return m;
}

void BM_solve_linear(benchmark::State& state) {
  const ChargeMemristor m = ChargeMemristor::linear(1, 1);
  const SwitchingTask t = task(1, 1, 100);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_linear(m, t, n));
  }
}
BENCHMARK(BM_solve_linear)->Arg(1001)->Arg(10001);

void BM_threshold_closed_form(benchmark::State& state) {
  const ThresholdMemristiveModel m = threshold_model();
  const SwitchingTask t = task(5, 1, 100);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_threshold_closed_form(m, t, n));
  }
}
BENCHMARK(BM_threshold_closed_form)->Arg(1001)->Arg(10001);

void BM_constrained_solve(benchmark::State& state) {
  const ChargeMemristor m = ChargeMemristor::linear(1, 100);
  SwitchingTask t = task(5, 1, 100);
  t.compliance = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_linear_with_compliance(m, t, 1001));
  }
}
BENCHMARK(BM_constrained_solve);

void BM_shooting(benchmark::State& state) {
  const FirstOrderControlModel cm = control_model(threshold_model());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_shooting(cm, 0, 1, 0, 5, 1.0, 501, 50));
  }
}
BENCHMARK(BM_shooting);

void BM_discrete_path_oracle(benchmark::State& state) {
  const ChargeMemristor m = ChargeMemristor::linear(1, 1);
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_discrete_path(
        [&m](double q) { return m.memristance(q); }, 0.0, 99.0, 0.0, 1.0, nodes));
  }
}
BENCHMARK(BM_discrete_path_oracle)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_constant_current_baseline_threshold(benchmark::State& state) {
  const ThresholdMemristiveModel m = threshold_model();
  const SwitchingTask t = task(5, 1, 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(baseline_threshold_constant_current(m, t, 101));
  }
}
BENCHMARK(BM_constant_current_baseline_threshold);

}  // namespace

BENCHMARK_MAIN();
