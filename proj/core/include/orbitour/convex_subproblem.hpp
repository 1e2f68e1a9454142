#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "orbitour/dynamics.hpp"

namespace orbitour {

// x_{i+1} = A_i x_i + B_i u_i + c_i. Stages without control have no u_i.
struct LqStage {
  StateMat A = StateMat::Identity();
  ControlMat B = ControlMat::Zero();
  StateVec c = StateVec::Zero();
  bool has_control = false;
  double umax = 0.0;  // ||u_i|| <= umax
  double r = 1.0;     // control weight, R_i = r I
  // Optional box |u_i - u_center|_inf <= u_radius on top of the ball.
  Eigen::Vector3d u_center = Eigen::Vector3d::Zero();
  double u_radius = std::numeric_limits<double>::infinity();
};

// minimize  1/2 (x_N - x_ref)' P (x_N - x_ref) + sum_i 1/2 r_i ||u_i||^2
// s.t. dynamics, ||u_i|| <= umax_i, |u_i - u_center_i| <= u_radius_i and
// |x_j - center_j| <= radius (componentwise, j = 1..N).
struct LqProblem {
  std::vector<LqStage> stages;
  StateVec x0 = StateVec::Zero();
  StateMat P = StateMat::Zero();
  StateVec x_ref = StateVec::Zero();
  std::vector<StateVec> box_center;  // N + 1 entries, empty means no state box
  StateVec box_radius = StateVec::Constant(std::numeric_limits<double>::infinity());
};

enum class SubproblemMethod {
  Auto,          // terminal-dual Newton when applicable, splitting otherwise
  Splitting,     // ADMM with Riccati sweeps
  TerminalDual,  // Newton on the terminal-state multiplier; no state box, r > 0
};

struct AdmmSettings {
  SubproblemMethod method = SubproblemMethod::Auto;
  int max_iter = 20000;
  double eps_abs = 1e-10;
  double eps_rel = 1e-9;
  double rho = 1.0;
  double alpha = 1.6;
  int adapt_interval = 25;
  int check_interval = 5;
  int newton_max_iter = 80;
  double newton_tol = 1e-13;  // on the optimality residual, relative to the multiplier size
};

// Ball-copy iterate and scaled dual, reusable to warm start a nearby problem.
struct AdmmState {
  double rho = 0.0;
  std::vector<Eigen::Vector3d> y;
  std::vector<Eigen::Vector3d> w;
  bool has_multiplier = false;
  StateVec multiplier = StateVec::Zero();  // scaled terminal multiplier of the dual method
};

struct LqSolution {
  std::vector<StateVec> X;         // N + 1
  std::vector<Eigen::Vector3d> U;  // N, zero on uncontrolled stages
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  SubproblemMethod method = SubproblemMethod::Splitting;
  AdmmState state;
};

// Euclidean projection onto {||u|| <= radius} intersected with [lo, hi]; the sets must meet.
Eigen::Vector3d project_ball_box(const Eigen::Vector3d& v, double radius, const Eigen::Vector3d& lo,
                                 const Eigen::Vector3d& hi);

// Equality-exact rollout of the affine dynamics.
std::vector<StateVec> lq_rollout(const LqProblem& qp, const std::vector<Eigen::Vector3d>& U);
double lq_objective(const LqProblem& qp, const std::vector<StateVec>& X, const std::vector<Eigen::Vector3d>& U);

// Splitting solver: an LQ Riccati sweep handles the objective and the dynamics, projections
// handle the control balls and the state box. Returned controls are the projected iterate
// and states their rollout, so the ball constraints and dynamics hold exactly.
//
// Without a state box the stages only couple through x_N, and the problem is solved in the
// 7-dimensional terminal multiplier instead: each control is a projection of -G_i' lambda / r_i,
// lambda = P (x_N - x_ref), found by a globalized semismooth Newton method.
LqSolution solve_convex_subproblem(const LqProblem& qp, const AdmmSettings& settings = {},
                                   const AdmmState* warm = nullptr);

}  // namespace orbitour
