#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "orbitour/convex_subproblem.hpp"
#include "orbitour/dynamics.hpp"
#include "orbitour/propagator.hpp"
#include "orbitour/stage_grid.hpp"

namespace orbitour {

struct Linearization {
  StateMat A = StateMat::Identity();
  ControlMat B = ControlMat::Zero();
  StateVec c = StateVec::Zero();
};

// One RK4 step of length `step` about (x_bar, u_bar): A, B by central differences with
// perturbations 1e-6 * max(1, |x_j|) (and likewise for u), c = f - A x_bar - B u_bar.
Linearization linearize_dynamics(const StateVec& x_bar, const Eigen::Vector3d& u_bar, double step, double isp,
                                 const PhysicalConstants& consts = {}, bool j2 = true);

// Same for a held control over `duration` split into substeps of at most max_step.
// scale_x / scale_u set the perturbation size per component.
Linearization linearize_flow(const StateVec& x_bar, const Eigen::Vector3d& u_bar, double duration,
                             const PropagatorConfig& prop, const PhysicalConstants& consts,
                             const StateVec& scale_x, double scale_u, double rel_step = 1e-6);

// States divided by (p_ref, 1, 1, 1, 1, 1, m_ref), controls by peak thrust.
struct Normalization {
  double p_ref = 1.0;
  double m_ref = 1.0;
  double u_ref = 1.0;

  StateVec scale() const;
  StateVec to_normalized(const StateVec& x) const { return x.cwiseQuotient(scale()); }
  StateVec to_physical(const StateVec& x) const { return x.cwiseProduct(scale()); }
  Eigen::Vector3d to_normalized(const Eigen::Vector3d& u) const { return u / u_ref; }
  Eigen::Vector3d to_physical(const Eigen::Vector3d& u) const { return u * u_ref; }
};

struct TrustRegion {
  double radius = 0.1;  // normalized state-deviation box half-width
  double min_radius = 1e-9;
  double max_radius = 10.0;
  double shrink = 0.5;
  double grow = 2.0;
  double eta_low = 0.25;
  double eta_high = 0.75;
};

// Terminal weight in normalized units; the mass row stays zero.
StateMat default_terminal_weight(double w_elements = 1e8, double w_longitude = 1e2);

struct OcpProblem {
  SpacecraftState x0_hat;
  StageGrid grid;         // stage durations and per-stage thrust bounds
  StateVec x_ref = StateVec::Zero();
  StateMat P = default_terminal_weight();
  double r = -1.0;        // control weight R = r I; negative means 1 / (number of thrust stages)
  PropagatorConfig prop;
  PhysicalConstants consts;
  double peak_thrust = 0.0126;  // kN, control scale
};

inline AdmmSettings scp_admm_defaults() {
  AdmmSettings s;
  s.eps_abs = 1e-9;
  s.eps_rel = 1e-8;
  return s;
}

struct ScpOptions {
  int max_iterations = 50;
  double tolerance = 1e-6;  // normalized update norm
  // The trust region always boxes control updates; this adds the same box on node states.
  bool state_box = false;
  AdmmSettings admm = scp_admm_defaults();
};

struct ScpIterate {
  double objective = 0.0;  // true objective after the iteration
  double predicted = 0.0;  // predicted reduction
  double actual = 0.0;     // realized reduction
  double radius = 0.0;     // trust radius used
  double step_norm = 0.0;
  bool accepted = false;
  int admm_iterations = 0;
};

struct RefinedArc {
  double t0 = 0.0;
  double isp = 0.0;  // s, of the model that produced the arc
  std::vector<double> durations;
  std::vector<double> tmax;              // kN
  std::vector<StateVec> states;          // N + 1
  std::vector<Eigen::Vector3d> controls; // kN, LVLH
  double dv_total = 0.0;                 // km/s
  double fuel = 0.0;                     // kg
  int iterations = 0;
  bool converged = false;
  StateVec terminal_error = StateVec::Zero();  // states.back() - x_ref
  double objective = 0.0;
  std::vector<ScpIterate> history;
  std::vector<std::string> warnings;

  int n_stages() const { return static_cast<int>(durations.size()); }
};

// Nonlinear rollout of piecewise-constant controls over the grid.
std::vector<StateVec> rollout(const StateVec& x0, const std::vector<double>& durations,
                              const std::vector<Eigen::Vector3d>& controls, const PropagatorConfig& prop,
                              const PhysicalConstants& consts);

// delta-v and fuel implied by the mass history of a trajectory.
double arc_delta_v(const std::vector<StateVec>& states, double isp, const PhysicalConstants& consts = {});

RefinedArc scp_solve(const OcpProblem& problem, const std::vector<Eigen::Vector3d>& warm_controls,
                     TrustRegion trust = {}, const ScpOptions& options = {});

}  // namespace orbitour
