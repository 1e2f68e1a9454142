#include "orbitour/scp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orbitour/errors.hpp"

namespace orbitour {

using Vec3 = Eigen::Vector3d;

Linearization linearize_flow(const StateVec& x_bar, const Vec3& u_bar, double duration, const PropagatorConfig& prop,
                             const PhysicalConstants& consts, const StateVec& scale_x, double scale_u,
                             double rel_step) {
  auto f = [&](const StateVec& x, const Vec3& u) {
    return rk4_flow(x, prop.thrust_efficiency * u, duration, prop.step, prop.isp, consts, prop.j2);
  };
  Linearization lin;
  for (int j = 0; j < 7; ++j) {
    const double h = rel_step * scale_x[j];
    StateVec xp = x_bar, xm = x_bar;
    xp[j] += h;
    xm[j] -= h;
    // Divide by the representable spread; |L| can be large.
    lin.A.col(j) = (f(xp, u_bar) - f(xm, u_bar)) / (xp[j] - xm[j]);
  }
  for (int j = 0; j < 3; ++j) {
    const double h = rel_step * scale_u;
    Vec3 up = u_bar, um = u_bar;
    up[j] += h;
    um[j] -= h;
    lin.B.col(j) = (f(x_bar, up) - f(x_bar, um)) / (up[j] - um[j]);
  }
  lin.c = f(x_bar, u_bar) - lin.A * x_bar - lin.B * u_bar;
  return lin;
}

Linearization linearize_dynamics(const StateVec& x_bar, const Vec3& u_bar, double step, double isp,
                                 const PhysicalConstants& consts, bool j2) {
  PropagatorConfig prop;
  prop.step = step;
  prop.isp = isp;
  prop.j2 = j2;
  StateVec sx;
  for (int j = 0; j < 7; ++j) sx[j] = std::max(1.0, std::abs(x_bar[j]));
  const double su = std::max(1.0, u_bar.cwiseAbs().maxCoeff());
  return linearize_flow(x_bar, u_bar, step, prop, consts, sx, su);
}

StateVec Normalization::scale() const {
  StateVec s;
  s << p_ref, 1.0, 1.0, 1.0, 1.0, 1.0, m_ref;
  return s;
}

StateMat default_terminal_weight(double w_elements, double w_longitude) {
  StateMat P = StateMat::Zero();
  for (int j = 0; j < 5; ++j) P(j, j) = w_elements;
  P(5, 5) = w_longitude;
  return P;
}

std::vector<StateVec> rollout(const StateVec& x0, const std::vector<double>& durations,
                              const std::vector<Vec3>& controls, const PropagatorConfig& prop,
                              const PhysicalConstants& consts) {
  std::vector<StateVec> X;
  X.reserve(durations.size() + 1);
  X.push_back(x0);
  for (std::size_t i = 0; i < durations.size(); ++i)
    X.push_back(rk4_flow(X.back(), prop.thrust_efficiency * controls[i], durations[i], prop.step, prop.isp, consts,
                         prop.j2));
  return X;
}

double arc_delta_v(const std::vector<StateVec>& states, double isp, const PhysicalConstants& consts) {
  if (states.empty()) return 0.0;
  return isp * consts.g0 * std::log(states.front()[6] / states.back()[6]);
}

namespace {

// A maximal run of coast stages collapses to one uncontrolled transition.
struct Block {
  int begin = 0;
  int end = 0;
  bool controlled = false;
};

std::vector<Block> make_blocks(const std::vector<double>& tmax) {
  std::vector<Block> blocks;
  const int n = static_cast<int>(tmax.size());
  for (int i = 0; i < n;) {
    if (tmax[i] > 0.0) {
      blocks.push_back({i, i + 1, true});
      ++i;
      continue;
    }
    int j = i;
    while (j < n && !(tmax[j] > 0.0)) ++j;
    blocks.push_back({i, j, false});
    i = j;
  }
  return blocks;
}

class ScpModel {
 public:
  ScpModel(const OcpProblem& pb) : pb_(pb), blocks_(make_blocks(pb.grid.tmax)) {
    norm_.p_ref = pb.x_ref[0];
    norm_.m_ref = pb.x0_hat.mass;
    norm_.u_ref = pb.peak_thrust;
    scale_ = norm_.scale();
    n_on_ = 0;
    for (double t : pb.grid.tmax) n_on_ += t > 0.0 ? 1 : 0;
    r_ = pb.r >= 0.0 ? pb.r : 1.0 / std::max(n_on_, 1);
    x0_ = to_state_vec(pb.x0_hat);
    xref_n_ = norm_.to_normalized(pb.x_ref);
  }

  const Normalization& norm() const { return norm_; }
  int n_stages() const { return pb_.grid.size(); }

  std::vector<StateVec> roll(const std::vector<Vec3>& U) const {
    return rollout(x0_, pb_.grid.durations, U, pb_.prop, pb_.consts);
  }

  double objective(const std::vector<StateVec>& X, const std::vector<Vec3>& U) const {
    const StateVec e = norm_.to_normalized(X.back()) - xref_n_;
    double J = 0.5 * e.dot(pb_.P * e);
    for (int i = 0; i < n_stages(); ++i)
      if (pb_.grid.tmax[i] > 0.0) J += 0.5 * r_ * norm_.to_normalized(U[i]).squaredNorm();
    return J;
  }

  // Deviation-form QP about (X, U): variables are block-node state deviations and
  // normalized absolute controls.
  LqProblem build_qp(const std::vector<StateVec>& X, const std::vector<Vec3>& U) const {
    LqProblem qp;
    qp.stages.resize(blocks_.size());
    const double su = norm_.u_ref;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const Block& bl = blocks_[b];
      LqStage& st = qp.stages[b];
      Linearization lin;
      if (bl.controlled) {
        lin = linearize_flow(X[bl.begin], U[bl.begin], pb_.grid.durations[bl.begin], pb_.prop, pb_.consts, scale_, su);
      } else {
        lin = coast_jacobian(X[bl.begin], bl);
      }
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) st.A(i, j) = lin.A(i, j) * scale_[j] / scale_[i];
      st.c.setZero();
      if (bl.controlled) {
        for (int i = 0; i < 7; ++i) st.B.row(i) = lin.B.row(i) * (su / scale_[i]);
        st.has_control = true;
        st.umax = pb_.grid.tmax[bl.begin] / su;
        st.r = r_;
        st.c = -st.B * norm_.to_normalized(U[bl.begin]);
        st.u_center = norm_.to_normalized(U[bl.begin]);
      }
    }
    qp.x0.setZero();
    qp.P = pb_.P;
    qp.x_ref = xref_n_ - norm_.to_normalized(X.back());
    return qp;
  }

  std::vector<Vec3> expand(const LqSolution& sol, const std::vector<Vec3>& U_prev) const {
    std::vector<Vec3> U = U_prev;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (blocks_[b].controlled) U[blocks_[b].begin] = norm_.to_physical(sol.U[b]);
    return U;
  }

  double step_norm(const std::vector<StateVec>& Xa, const std::vector<Vec3>& Ua, const std::vector<StateVec>& Xb,
                   const std::vector<Vec3>& Ub) const {
    double s = 0.0;
    for (int i = 0; i < n_stages(); ++i)
      s = std::max(s, (norm_.to_normalized(Ua[i]) - norm_.to_normalized(Ub[i])).cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < Xa.size(); ++j)
      s = std::max(s, (norm_.to_normalized(Xa[j]) - norm_.to_normalized(Xb[j])).cwiseAbs().maxCoeff());
    return s;
  }

  double r() const { return r_; }

 private:
  Linearization coast_jacobian(const StateVec& x, const Block& bl) const {
    auto flow = [&](StateVec y) {
      for (int i = bl.begin; i < bl.end; ++i)
        y = rk4_flow(y, Vec3::Zero(), pb_.grid.durations[i], pb_.prop.step, pb_.prop.isp, pb_.consts, pb_.prop.j2);
      return y;
    };
    Linearization lin;
    for (int j = 0; j < 7; ++j) {
      const double h = 1e-6 * scale_[j];
      StateVec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      lin.A.col(j) = (flow(xp) - flow(xm)) / (xp[j] - xm[j]);
    }
    return lin;
  }

  const OcpProblem& pb_;
  std::vector<Block> blocks_;
  Normalization norm_;
  StateVec scale_;
  int n_on_ = 0;
  double r_ = 1.0;
  StateVec x0_;
  StateVec xref_n_;
};

}  // namespace

RefinedArc scp_solve(const OcpProblem& problem, const std::vector<Vec3>& warm_controls, TrustRegion trust,
                     const ScpOptions& options) {
  const int n = problem.grid.size();
  if (n < 1) throw InvalidArgument("arc needs at least one stage");
  if (static_cast<int>(warm_controls.size()) != n) throw InvalidArgument("warm start size does not match the grid");
  if (static_cast<int>(problem.grid.tmax.size()) != n) throw InvalidArgument("thrust bounds do not match the grid");
  if (!(trust.radius > 0.0) || !(trust.shrink < 1.0) || !(trust.grow > 1.0))
    throw InvalidArgument("invalid trust region");

  ScpModel model(problem);
  RefinedArc arc;
  arc.t0 = problem.grid.t0;
  arc.isp = problem.prop.isp;
  arc.durations = problem.grid.durations;
  arc.tmax = problem.grid.tmax;
  arc.warnings = problem.grid.warnings;

  std::vector<Vec3> U(n);
  for (int i = 0; i < n; ++i) {
    const double b = problem.grid.tmax[i];
    const double nu = warm_controls[i].norm();
    U[i] = (b <= 0.0) ? Vec3::Zero() : (nu > b ? Vec3(warm_controls[i] * (b / nu)) : warm_controls[i]);
  }
  std::vector<StateVec> X = model.roll(U);
  double J = model.objective(X, U);

  double radius = trust.radius;
  bool relinearize = true;
  LqProblem qp;
  AdmmState admm_state;
  for (int it = 1; it <= options.max_iterations; ++it) {
    if (relinearize) {
      qp = model.build_qp(X, U);
      relinearize = false;
    }
    if (options.state_box) {
      qp.box_center.assign(qp.stages.size() + 1, StateVec::Zero());
      qp.box_radius = StateVec::Constant(radius);
    }
    for (auto& st : qp.stages)
      if (st.has_control) st.u_radius = radius;
    LqSolution sol = solve_convex_subproblem(qp, options.admm, admm_state.y.empty() ? nullptr : &admm_state);
    admm_state = std::move(sol.state);
    const std::vector<Vec3> Un = model.expand(sol, U);
    std::vector<StateVec> Xn;
    double Jn = std::numeric_limits<double>::infinity();
    try {
      Xn = model.roll(Un);
      Jn = model.objective(Xn, Un);
    } catch (const SingularState&) {
      Xn = X;
    }
    ScpIterate rec;
    rec.radius = radius;
    rec.predicted = J - sol.objective;
    rec.actual = J - Jn;
    rec.admm_iterations = sol.iterations;
    rec.step_norm = std::isfinite(Jn) ? model.step_norm(Xn, Un, X, U) : std::numeric_limits<double>::infinity();
    arc.iterations = it;

    const bool stalled = rec.predicted <= 1e-9 * std::max(J, 1e-300);
    rec.accepted = rec.actual > 0.0 && !stalled;
    if (rec.accepted) {
      U = Un;
      X = Xn;
      J = Jn;
      relinearize = true;
    }
    rec.objective = J;
    arc.history.push_back(rec);
    if (stalled || (rec.accepted && rec.step_norm < options.tolerance)) {
      arc.converged = true;
      break;
    }
    const double ratio = rec.actual / rec.predicted;
    if (ratio < trust.eta_low) {
      radius *= trust.shrink;
    } else if (ratio > trust.eta_high) {
      radius = std::min(radius * trust.grow, trust.max_radius);
    }
    if (radius < trust.min_radius) {
      arc.warnings.push_back("trust region collapsed before convergence");
      break;
    }
  }

  arc.states = std::move(X);
  arc.controls = std::move(U);
  arc.objective = J;
  arc.terminal_error = arc.states.back() - problem.x_ref;
  arc.dv_total = arc_delta_v(arc.states, problem.prop.isp, problem.consts);
  arc.fuel = arc.states.front()[6] - arc.states.back()[6];
  if (!arc.converged) {
    std::ostringstream msg;
    msg << "SCP stopped after " << arc.iterations << " iterations without meeting the tolerance";
    arc.warnings.push_back(msg.str());
  }
  return arc;
}

}  // namespace orbitour
