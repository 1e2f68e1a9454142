#pragma once

#include <vector>

#include <Eigen/Core>

#include "orbitour/dynamics.hpp"

namespace orbitour {

struct PropagatorConfig {
  double step = 10.0;  // s, largest RK4 substep
  bool j2 = true;
  double isp = 277.0;  // s
  // Share of commanded thrust that ends up along the commanded direction.
  double thrust_efficiency = 1.0;
};

// Constant LVLH thrust [kN] held for `duration` seconds.
struct ControlSegment {
  double duration = 0.0;
  Eigen::Vector3d u = Eigen::Vector3d::Zero();
};

using ControlSchedule = std::vector<ControlSegment>;

struct Trajectory {
  std::vector<double> times;     // segment boundaries, starting at the initial epoch
  std::vector<StateVec> states;  // one per boundary
};

// One classical RK4 step; L is advanced as an increment so large unwrapped values keep precision.
StateVec rk4_step(const StateVec& x, const Eigen::Vector3d& u, double dt, double isp, const PhysicalConstants& consts,
                  bool j2 = true);

// Holds u for `duration`, splitting it into equal substeps no longer than max_step.
StateVec rk4_flow(const StateVec& x, const Eigen::Vector3d& u, double duration, double max_step, double isp,
                  const PhysicalConstants& consts, bool j2 = true);

// Substeps never straddle a segment boundary.
Trajectory propagate_numeric(const SpacecraftState& state, const ControlSchedule& controls,
                             const PropagatorConfig& config = {}, const PhysicalConstants& consts = {});

// Coast for `duration`, sampled every `sample` seconds (last sample may be shorter).
Trajectory propagate_coast(const SpacecraftState& state, double duration, double sample,
                           const PropagatorConfig& config = {}, const PhysicalConstants& consts = {});

}  // namespace orbitour
