#include "orbitour/propagator.hpp"

#include <cmath>

#include "orbitour/errors.hpp"

namespace orbitour {

StateVec rk4_step(const StateVec& x, const Eigen::Vector3d& u, double dt, double isp, const PhysicalConstants& consts,
                  bool j2) {
  StateVec y = x;
  y[5] = wrap_two_pi(x[5]);
  const StateVec k1 = state_rhs(y, u, isp, consts, j2);
  const StateVec k2 = state_rhs(y + 0.5 * dt * k1, u, isp, consts, j2);
  const StateVec k3 = state_rhs(y + 0.5 * dt * k2, u, isp, consts, j2);
  const StateVec k4 = state_rhs(y + dt * k3, u, isp, consts, j2);
  const StateVec inc = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  StateVec out = x + inc;
  return out;
}

StateVec rk4_flow(const StateVec& x, const Eigen::Vector3d& u, double duration, double max_step, double isp,
                  const PhysicalConstants& consts, bool j2) {
  if (duration < 0.0) throw InvalidArgument("negative flow duration");
  if (!(max_step > 0.0)) throw InvalidArgument("RK4 step must be positive");
  if (duration == 0.0) return x;
  const int n = static_cast<int>(std::ceil(duration / max_step - 1e-9));
  const double h = duration / n;
  StateVec y = x;
  // Sum the L increments separately from the large unwrapped base value.
  const double L0 = x[5];
  y[5] = wrap_two_pi(L0);
  const double base = L0 - y[5];
  for (int s = 0; s < n; ++s) y = rk4_step(y, u, h, isp, consts, j2);
  y[5] += base;
  return y;
}

Trajectory propagate_numeric(const SpacecraftState& state, const ControlSchedule& controls,
                             const PropagatorConfig& config, const PhysicalConstants& consts) {
  if (!(config.step > 0.0)) throw InvalidArgument("propagator step must be positive");
  Trajectory tr;
  tr.times.reserve(controls.size() + 1);
  tr.states.reserve(controls.size() + 1);
  StateVec x = to_state_vec(state);
  double t = state.epoch;
  tr.times.push_back(t);
  tr.states.push_back(x);
  for (const auto& seg : controls) {
    if (seg.duration < 0.0) throw InvalidArgument("negative control segment duration");
    x = rk4_flow(x, config.thrust_efficiency * seg.u, seg.duration, config.step, config.isp, consts, config.j2);
    t += seg.duration;
    tr.times.push_back(t);
    tr.states.push_back(x);
  }
  return tr;
}

Trajectory propagate_coast(const SpacecraftState& state, double duration, double sample,
                           const PropagatorConfig& config, const PhysicalConstants& consts) {
  if (!(sample > 0.0)) throw InvalidArgument("sample interval must be positive");
  ControlSchedule cs;
  double left = duration;
  while (left > 1e-9) {
    const double d = std::min(sample, left);
    cs.push_back({d, Eigen::Vector3d::Zero()});
    left -= d;
  }
  return propagate_numeric(state, cs, config, consts);
}

}  // namespace orbitour
