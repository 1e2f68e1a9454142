#include <benchmark/benchmark.h>

#include "orbitour/maneuvers.hpp"
#include "orbitour/propagator.hpp"

using namespace orbitour;

namespace {

StateVec leo_state() {
  SpacecraftState s;
  s.mee = kep_to_mee({7000, 0.01, 97.4 * kDegToRad, 0.3, 0.5, 0.0});
  s.mass = 220;
  return to_state_vec(s);
}

void BM_Rk4Step(benchmark::State& st) {
  const StateVec x = leo_state();
  const Eigen::Vector3d u(0.0, 0.01, 0.0);
  for (auto _ : st) benchmark::DoNotOptimize(rk4_step(x, u, 20.0, 277.0, {}));
}
BENCHMARK(BM_Rk4Step);

void BM_CoastOneOrbit(benchmark::State& st) {
  SpacecraftState s = from_state_vec(leo_state(), 0.0);
  const double T = orbit_scalars(7000).period;
  for (auto _ : st) benchmark::DoNotOptimize(propagate_coast(s, T, T));
}
BENCHMARK(BM_CoastOneOrbit)->Unit(benchmark::kMicrosecond);

void BM_MhtEstimate(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(mht_estimate(6950, 7000, 235, ThrusterSpec{}));
}
BENCHMARK(BM_MhtEstimate)->Unit(benchmark::kMicrosecond);

void BM_NicEstimate(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(nic_estimate(kDegToRad, 7000, 235, ThrusterSpec{}));
}
BENCHMARK(BM_NicEstimate)->Unit(benchmark::kMicrosecond);

}  // namespace
