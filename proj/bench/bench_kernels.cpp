// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "trialalloc/grid.hpp"
#include "trialalloc/model.hpp"
#include "trialalloc/simulate.hpp"

using namespace trialalloc;

namespace {

DesignSpec binomial_design() {
  DesignSpec spec;
  spec.control = OutcomeFamily::binomial(0.008);
  spec.treatment = {OutcomeFamily::binomial(0.008)};
  spec.margin = Margin{MarginKind::additive, 0.004};
  spec.direction = Direction::lower_favorable;
  return spec;
}

DesignSpec normal_design() {
  DesignSpec spec;
  spec.control = OutcomeFamily::normal(0.0, 1.0);
  spec.treatment = {OutcomeFamily::normal(0.0, 1.0)};
  spec.margin = Margin{MarginKind::additive, 0.5};
  return spec;
}

void grid_scan(benchmark::State& state, Execution exec) {
  const auto objective = TwoArmVarianceObjective::from_margin(Margin{MarginKind::multiplicative, 1.5}, 20, 30);
  const GridSpec grid = GridSpec::unit(1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_minimize_fraction(objective, grid, exec).argmin);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.points()));
}

void simplex_scan(benchmark::State& state, Execution exec) {
  const SimplexVarianceObjective objective{{2.0, 1.0, 1.5, 0.7}};
  for (auto _ : state) benchmark::DoNotOptimize(grid_minimize_simplex(objective, {}, exec));
}

void replicates(benchmark::State& state, const DesignSpec& spec, std::int64_t n, Execution exec) {
  const auto reps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const auto r = simulate_rejection_rate(spec, n, n, ParameterPoint::alternative, reps, 1, SimulationOptions{exec, 0});
    benchmark::DoNotOptimize(r.rejections);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(reps));
}

}  // namespace

BENCHMARK_CAPTURE(grid_scan, serial, Execution::serial)->Arg(10'000)->Arg(100'000);
BENCHMARK_CAPTURE(grid_scan, parallel, Execution::parallel)->Arg(10'000)->Arg(100'000);
BENCHMARK_CAPTURE(simplex_scan, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(simplex_scan, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replicates, normal_serial, normal_design(), 85, Execution::serial)
    ->Arg(10'000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replicates, normal_parallel, normal_design(), 85, Execution::parallel)
    ->Arg(10'000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replicates, binomial_serial, binomial_design(), 9434, Execution::serial)
    ->Arg(2'000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replicates, binomial_parallel, binomial_design(), 9434, Execution::parallel)
    ->Arg(2'000)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
