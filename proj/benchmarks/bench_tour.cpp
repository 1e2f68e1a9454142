#include <benchmark/benchmark.h>

#include "orbitour/optimizer.hpp"
#include "orbitour/tour.hpp"

using namespace orbitour;

namespace {

MissionScenario scenario(int n) {
  ScenarioConfig cfg;
  cfg.fixed_bundles = n;
  return sample_scenario(cfg, 17);
}

void BM_TourFuelCost(benchmark::State& st) {
  const MissionScenario sc = scenario(static_cast<int>(st.range(0)));
  const Permutation p = identity_permutation(static_cast<int>(sc.bundles.size()));
  for (auto _ : st) benchmark::DoNotOptimize(tour_fuel_cost(sc, p, {}, {}));
}
BENCHMARK(BM_TourFuelCost)->Arg(4)->Arg(13)->Unit(benchmark::kMicrosecond);

void BM_BruteForce(benchmark::State& st) {
  const MissionScenario sc = scenario(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(brute_force(sc));
}
BENCHMARK(BM_BruteForce)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Optimize13(benchmark::State& st) {
  const MissionScenario sc = scenario(13);
  OptimizerConfig oc;
  oc.jobs = 1;
  for (auto _ : st) benchmark::DoNotOptimize(optimize(sc, oc));
}
BENCHMARK(BM_Optimize13)->Unit(benchmark::kMillisecond);

}  // namespace
