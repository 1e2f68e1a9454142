#include <benchmark/benchmark.h>

#include "orbitour/maneuvers.hpp"
#include "orbitour/refine.hpp"
#include "orbitour/scp.hpp"

using namespace orbitour;

namespace {

void BM_LinearizeDynamics(benchmark::State& st) {
  SpacecraftState s;
  s.mee = kep_to_mee({7000, 0.01, 97.4 * kDegToRad, 0.3, 0.5, 0.0});
  s.mass = 220;
  const StateVec x = to_state_vec(s);
  const Eigen::Vector3d u(0.0, 0.01, 0.0);
  for (auto _ : st) benchmark::DoNotOptimize(linearize_dynamics(x, u, 20.0, 277.0));
}
BENCHMARK(BM_LinearizeDynamics)->Unit(benchmark::kMicrosecond);

// Short orbit raise through the full refinement loop.
void BM_RefineShortRaise(benchmark::State& st) {
  SpacecraftState s;
  s.mee = kep_to_mee({6878, 0.0, 97.4 * kDegToRad, 0.0, 0.0, 0.0});
  s.mass = 220;
  const ThrusterSpec th;
  const Maneuver m = sequential_mht_nic(s, {6888, 0.0, 97.4 * kDegToRad, 0.0, 0.0, 0.0}, 0.0, th);
  for (auto _ : st) benchmark::DoNotOptimize(refine_phase(m.phases.front(), m.plan, th));
}
BENCHMARK(BM_RefineShortRaise)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
