#pragma once

#include <string>
#include <vector>

#include "orbitour/dynamics.hpp"
#include "orbitour/maneuvers.hpp"
#include "orbitour/propagator.hpp"

namespace orbitour {

struct TmaxSchedule {
  std::vector<double> tmax;  // kN per stage
  std::vector<std::string> warnings;
};

// Uniform stages of length `step` over [0, horizon). A burn at epoch e (relative to t0)
// owns the window [e - t_on/2, e + t_on/2), shifted to stay inside the horizon; stages
// starting inside a window get the peak thrust.
TmaxSchedule tmax_schedule(const BurnPlan& plan, double step, const ThrusterSpec& thruster, double horizon,
                           double t0 = 0.0);

struct GridOptions {
  int stages_per_window = 4;
  int stages_per_orbit = 40;
  int max_stages = 20000;
};

struct BurnWindow {
  double start = 0.0;  // relative to t0
  double end = 0.0;
  std::vector<int> impulses;  // indices into the plan
};

// Non-uniform grid: thrust windows resolved by a few short stages, coasts by at most
// period / stages_per_orbit.
struct StageGrid {
  double t0 = 0.0;
  std::vector<double> durations;
  std::vector<double> tmax;  // kN
  std::vector<int> window;   // window index of each stage, -1 on coasts
  std::vector<BurnWindow> windows;
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(durations.size()); }
  double horizon() const;
  double max_duration() const;
  std::vector<double> node_times() const;  // N + 1 absolute epochs
};

std::vector<BurnWindow> burn_windows(const BurnPlan& plan, const ThrusterSpec& thruster, double t0, double horizon,
                                     std::vector<std::string>& warnings);

StageGrid build_stage_grid(const BurnPlan& plan, const ThrusterSpec& thruster, double t0, double horizon,
                           double orbit_period, const GridOptions& opts = {});

struct WarmStart {
  std::vector<Eigen::Vector3d> controls;  // kN per stage
  std::vector<StateVec> states;           // N + 1
  std::vector<double> window_impulse;     // delivered impulse per window [kg km/s]
  std::vector<double> window_request;     // requested impulse per window after spill-over
  std::vector<std::string> warnings;
};

// Each window's impulses become a constant force m * dv / length along the impulse
// direction, m being the propagated mass at window start. Force above the bound is
// clipped and the shortfall carried into the next window.
WarmStart warm_start(const BurnPlan& plan, const StageGrid& grid, const SpacecraftState& x0,
                     const PropagatorConfig& prop = {}, const PhysicalConstants& consts = {});

}  // namespace orbitour
