#include "orbitour/stage_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orbitour/errors.hpp"

namespace orbitour {

std::vector<BurnWindow> burn_windows(const BurnPlan& plan, const ThrusterSpec& thruster, double t0, double horizon,
                                     std::vector<std::string>& warnings) {
  std::vector<BurnWindow> out;
  const double len = std::min(thruster.t_on, horizon);
  for (std::size_t j = 0; j < plan.impulses.size(); ++j) {
    const double e = plan.impulses[j].epoch - t0;
    if (e < -1e-9 || e > horizon + 1e-9) throw InvalidArgument("burn epoch outside the arc horizon");
    double s = e - 0.5 * len;
    s = std::clamp(s, 0.0, horizon - len);
    BurnWindow w{s, s + len, {static_cast<int>(j)}};
    if (!out.empty() && w.start < out.back().end - 1e-9) {
      std::ostringstream msg;
      msg << "burn windows overlap at t=" << w.start << " s; merged";
      warnings.push_back(msg.str());
      out.back().end = std::max(out.back().end, w.end);
      out.back().impulses.push_back(static_cast<int>(j));
      continue;
    }
    if (!out.empty() && w.start - out.back().end < thruster.t_cooldown - 1e-9) {
      std::ostringstream msg;
      msg << "off time before window at t=" << w.start << " s is shorter than the cool-down";
      warnings.push_back(msg.str());
    }
    out.push_back(std::move(w));
  }
  return out;
}

TmaxSchedule tmax_schedule(const BurnPlan& plan, double step, const ThrusterSpec& thruster, double horizon,
                           double t0) {
  if (!(step > 0.0)) throw InvalidArgument("stage step must be positive");
  TmaxSchedule out;
  const int n = static_cast<int>(std::ceil(horizon / step - 1e-9));
  out.tmax.assign(std::max(n, 0), 0.0);
  const auto windows = burn_windows(plan, thruster, t0, horizon, out.warnings);
  int prev_last = -1;
  for (const auto& w : windows) {
    int first = static_cast<int>(std::ceil(w.start / step - 1e-9));
    int last = static_cast<int>(std::ceil(w.end / step - 1e-9)) - 1;
    first = std::max(first, 0);
    last = std::min(last, n - 1);
    if (first <= prev_last) {
      out.warnings.push_back("burn windows overlap after quantization; merged");
      first = prev_last + 1;
    }
    for (int i = first; i <= last; ++i) out.tmax[i] = thruster.peak_thrust_kn();
    prev_last = std::max(prev_last, last);
  }
  return out;
}

double StageGrid::horizon() const {
  double s = 0.0;
  for (double d : durations) s += d;
  return s;
}

double StageGrid::max_duration() const {
  double m = 0.0;
  for (double d : durations) m = std::max(m, d);
  return m;
}

std::vector<double> StageGrid::node_times() const {
  std::vector<double> t(durations.size() + 1, t0);
  for (std::size_t i = 0; i < durations.size(); ++i) t[i + 1] = t[i] + durations[i];
  return t;
}

namespace {

void fill_grid(StageGrid& g, double horizon, double coast_len, int per_window, double peak) {
  g.durations.clear();
  g.tmax.clear();
  g.window.clear();
  double cursor = 0.0;
  auto coast = [&](double until) {
    const double gap = until - cursor;
    if (gap <= 1e-9) return;
    const int n = static_cast<int>(std::ceil(gap / coast_len - 1e-9));
    for (int i = 0; i < n; ++i) {
      g.durations.push_back(gap / n);
      g.tmax.push_back(0.0);
      g.window.push_back(-1);
    }
    cursor = until;
  };
  for (std::size_t w = 0; w < g.windows.size(); ++w) {
    const BurnWindow& bw = g.windows[w];
    coast(bw.start);
    const double len = bw.end - bw.start;
    for (int i = 0; i < per_window; ++i) {
      g.durations.push_back(len / per_window);
      g.tmax.push_back(peak);
      g.window.push_back(static_cast<int>(w));
    }
    cursor = bw.end;
  }
  coast(horizon);
}

}  // namespace

StageGrid build_stage_grid(const BurnPlan& plan, const ThrusterSpec& thruster, double t0, double horizon,
                           double orbit_period, const GridOptions& opts) {
  if (!(horizon > 0.0)) throw InvalidArgument("arc horizon must be positive");
  StageGrid g;
  g.t0 = t0;
  g.windows = burn_windows(plan, thruster, t0, horizon, g.warnings);
  const int on_stages = static_cast<int>(g.windows.size()) * opts.stages_per_window;
  if (on_stages >= opts.max_stages) throw InvalidArgument("thrust windows alone exceed the stage cap");
  double coast_len = orbit_period / opts.stages_per_orbit;
  fill_grid(g, horizon, coast_len, opts.stages_per_window, thruster.peak_thrust_kn());
  while (g.size() > opts.max_stages) {
    coast_len *= 1.25;
    fill_grid(g, horizon, coast_len, opts.stages_per_window, thruster.peak_thrust_kn());
  }
  if (coast_len > orbit_period / opts.stages_per_orbit * 1.0000001) {
    std::ostringstream msg;
    msg << "coast stages coarsened to " << coast_len << " s to respect the stage cap";
    g.warnings.push_back(msg.str());
  }
  return g;
}

WarmStart warm_start(const BurnPlan& plan, const StageGrid& grid, const SpacecraftState& x0,
                     const PropagatorConfig& prop, const PhysicalConstants& consts) {
  WarmStart ws;
  const int n = grid.size();
  ws.controls.assign(n, Eigen::Vector3d::Zero());
  ws.states.reserve(n + 1);
  ws.window_impulse.assign(grid.windows.size(), 0.0);
  ws.window_request.assign(grid.windows.size(), 0.0);
  StateVec x = to_state_vec(x0);
  ws.states.push_back(x);
  Eigen::Vector3d carry = Eigen::Vector3d::Zero();  // impulse [kg km/s]
  int current = -2;
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    const int w = grid.window[i];
    if (w >= 0 && w != current) {
      current = w;
      const BurnWindow& bw = grid.windows[w];
      Eigen::Vector3d impulse = carry;
      for (int j : bw.impulses) impulse += x[6] * plan.impulses[j].dv_lvlh;
      const double len = bw.end - bw.start;
      force = impulse / len;
      ws.window_request[w] = impulse.norm();
      const double bound = grid.tmax[i];
      if (force.norm() > bound) {
        const Eigen::Vector3d clipped = force * (bound / force.norm());
        carry = impulse - clipped * len;
        force = clipped;
        std::ostringstream msg;
        msg << "warm start force clipped in window " << w << "; " << carry.norm() * 1e3 << " N s carried over";
        ws.warnings.push_back(msg.str());
      } else {
        carry.setZero();
      }
      ws.window_impulse[w] = force.norm() * len;
    }
    if (w >= 0) ws.controls[i] = force;
    x = rk4_flow(x, prop.thrust_efficiency * ws.controls[i], grid.durations[i], prop.step, prop.isp, consts, prop.j2);
    ws.states.push_back(x);
  }
  if (carry.norm() > 0.0) ws.warnings.push_back("impulse left undelivered at arc end");
  return ws;
}

}  // namespace orbitour
