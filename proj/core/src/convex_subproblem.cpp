#include "orbitour/convex_subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "orbitour/errors.hpp"

namespace orbitour {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Quadratic part of the Riccati recursion for a fixed rho; reused across iterations.
struct RiccatiCache {
  double rho = 0.0;
  std::vector<StateMat> S;                  // N + 1
  std::vector<Eigen::Matrix<double, 3, 7>> K;
  std::vector<Mat3> Quu_inv;
  std::vector<Eigen::Matrix<double, 3, 7>> Qux;
};

class Workspace {
 public:
  Workspace(const LqProblem& qp) : qp_(qp), n_(static_cast<int>(qp.stages.size())) {
    has_box_ = !qp.box_center.empty();
    if (has_box_) {
      for (int j = 0; j < 7; ++j) box_mask_[j] = std::isfinite(qp.box_radius[j]) ? 1.0 : 0.0;
    } else {
      box_mask_.setZero();
    }
  }

  void factor(double rho) {
    c_.rho = rho;
    c_.S.resize(n_ + 1);
    c_.K.resize(n_);
    c_.Quu_inv.resize(n_);
    c_.Qux.resize(n_);
    c_.S[n_] = qp_.P + box_weight(n_, rho);
    for (int i = n_ - 1; i >= 0; --i) {
      const LqStage& st = qp_.stages[i];
      const StateMat& Sn = c_.S[i + 1];
      StateMat Qxx = st.A.transpose() * Sn * st.A + box_weight(i, rho);
      if (st.has_control) {
        const Eigen::Matrix<double, 7, 3> SB = Sn * st.B;
        Mat3 Quu = st.B.transpose() * SB;
        Quu.diagonal().array() += st.r + rho * copies(st);
        c_.Qux[i] = SB.transpose() * st.A;
        c_.Quu_inv[i] = Quu.llt().solve(Mat3::Identity());
        c_.K[i] = -c_.Quu_inv[i] * c_.Qux[i];
        Qxx += c_.Qux[i].transpose() * c_.K[i];
      }
      c_.S[i] = 0.5 * (Qxx + Qxx.transpose());
    }
  }

  // Minimizes the objective plus rho/2 ||u - v||^2 (and rho/2 ||u - vb||^2 where a control box
  // exists) and rho/2 ||mask (x - a)||^2 subject to dynamics.
  void lq_solve(const std::vector<Vec3>& v, const std::vector<Vec3>& vb, const std::vector<StateVec>& a,
                std::vector<StateVec>& X, std::vector<Vec3>& U) {
    const double rho = c_.rho;
    kff_.resize(n_);
    StateVec s = -qp_.P * qp_.x_ref;
    if (has_box_) s -= rho * box_mask_.cwiseProduct(a[n_]);
    svec_.resize(n_ + 1);
    svec_[n_] = s;
    for (int i = n_ - 1; i >= 0; --i) {
      const LqStage& st = qp_.stages[i];
      const StateVec g = c_.S[i + 1] * st.c + svec_[i + 1];
      StateVec si = st.A.transpose() * g;
      if (has_box_ && i > 0) si -= rho * box_mask_.cwiseProduct(a[i]);
      if (st.has_control) {
        Vec3 qu = st.B.transpose() * g - rho * v[i];
        if (has_ubox(st)) qu -= rho * vb[i];
        kff_[i] = -c_.Quu_inv[i] * qu;
        si += c_.Qux[i].transpose() * kff_[i];
      }
      svec_[i] = si;
    }
    X.resize(n_ + 1);
    U.resize(n_);
    X[0] = qp_.x0;
    for (int i = 0; i < n_; ++i) {
      const LqStage& st = qp_.stages[i];
      if (st.has_control) {
        U[i] = c_.K[i] * X[i] + kff_[i];
        X[i + 1] = st.A * X[i] + st.B * U[i] + st.c;
      } else {
        U[i].setZero();
        X[i + 1] = st.A * X[i] + st.c;
      }
    }
  }

  static bool has_ubox(const LqStage& st) { return std::isfinite(st.u_radius); }
  static double copies(const LqStage& st) { return has_ubox(st) ? 2.0 : 1.0; }
  bool has_box() const { return has_box_; }
  const StateVec& mask() const { return box_mask_; }

 private:
  StateMat box_weight(int node, double rho) const {
    StateMat W = StateMat::Zero();
    if (has_box_ && node > 0) W.diagonal() = rho * box_mask_;
    return W;
  }

  const LqProblem& qp_;
  int n_;
  bool has_box_ = false;
  StateVec box_mask_;
  RiccatiCache c_;
  std::vector<Vec3> kff_;
  std::vector<StateVec> svec_;
};

Vec3 project_ball(const Vec3& u, double radius) {
  const double n = u.norm();
  if (n <= radius) return u;
  if (radius <= 0.0 || n == 0.0) return Vec3::Zero();
  return u * (radius / n);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

void box_bounds(const LqStage& st, Vec3& lo, Vec3& hi) {
  if (std::isfinite(st.u_radius)) {
    lo = st.u_center.array() - st.u_radius;
    hi = st.u_center.array() + st.u_radius;
  } else {
    lo.setConstant(-kInf);
    hi.setConstant(kInf);
  }
}

// Projection onto the stage's feasible set and a generalized Jacobian of it.
Vec3 project_stage(const Vec3& v, const LqStage& st, Mat3& J) {
  Vec3 lo, hi;
  box_bounds(st, lo, hi);
  const Vec3 u = project_ball_box(v, st.umax, lo, hi);
  Eigen::Array3d free;
  for (int j = 0; j < 3; ++j) free[j] = (u[j] > lo[j] && u[j] < hi[j]) ? 1.0 : 0.0;
  J.setZero();
  const double nu = u.norm();
  if (nu < st.umax * (1.0 - 1e-12)) {
    J.diagonal() = free.matrix();
    return u;
  }
  Vec3 vf = (v.array() * free).matrix();
  const double nvf = vf.norm();
  if (nvf <= 0.0) return u;
  const Vec3 uf = (u.array() * free).matrix();
  const Vec3 dir = vf / nvf;
  const double s = uf.norm() / nvf;
  J = s * (Mat3(free.matrix().asDiagonal()) - dir * dir.transpose());
  return u;
}

bool solve_terminal_dual(const LqProblem& qp, const AdmmSettings& settings, const AdmmState* warm, LqSolution& sol) {
  const int n = static_cast<int>(qp.stages.size());
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if (qp.stages[i].has_control) {
      if (!(qp.stages[i].r > 0.0)) return false;
      idx.push_back(i);
    }
  const int m = static_cast<int>(idx.size());
  std::vector<Eigen::Matrix<double, 7, 3>> G(m);
  {
    StateMat Phi = StateMat::Identity();
    int b = m - 1;
    for (int i = n - 1; i >= 0; --i) {
      if (b >= 0 && idx[b] == i) G[b--] = Phi * qp.stages[i].B;
      Phi = Phi * qp.stages[i].A;
    }
  }
  const StateVec h = lq_rollout(qp, std::vector<Vec3>(n, Vec3::Zero())).back();

  // P = L L' from a pivoted LDL' factorization (P may be singular).
  const Eigen::LDLT<StateMat> ldlt(0.5 * (qp.P + qp.P.transpose()));
  const StateMat Lf = ldlt.matrixL();
  const StateMat L = ldlt.transpositionsP().transpose() * (Lf * ldlt.vectorD().cwiseMax(0.0).cwiseSqrt().asDiagonal());
  const StateVec href = L.transpose() * (h - qp.x_ref);

  std::vector<Vec3> U(m);
  auto evaluate = [&](const StateVec& eta, StateVec& F, StateMat* H) {
    const StateVec lam = L * eta;
    StateVec z = StateVec::Zero();
    StateMat M = StateMat::Zero();
    double conj = 0.0;
    Mat3 J;
    for (int b = 0; b < m; ++b) {
      const LqStage& st = qp.stages[idx[b]];
      const Vec3 w = -G[b].transpose() * lam;
      U[b] = project_stage(w / st.r, st, J);
      conj += w.dot(U[b]) - 0.5 * st.r * U[b].squaredNorm();
      z += G[b] * U[b];
      if (H) M += G[b] * (J / st.r) * G[b].transpose();
    }
    F = eta - href - L.transpose() * z;
    if (H) {
      *H = StateMat::Identity() + L.transpose() * M * L;
      *H = 0.5 * (*H + H->transpose());
    }
    return 0.5 * eta.squaredNorm() + conj - eta.dot(href);
  };

  StateVec eta = (warm && warm->has_multiplier) ? warm->multiplier : StateVec::Zero();
  StateVec F;
  StateMat H;
  double psi = evaluate(eta, F, &H);
  bool ok = false;
  int it = 0;
  for (it = 1; it <= settings.newton_max_iter; ++it) {
    const double fn = F.cwiseAbs().maxCoeff();
    if (fn <= settings.newton_tol * (1.0 + eta.cwiseAbs().maxCoeff())) {
      ok = true;
      break;
    }
    const StateVec d = -H.llt().solve(F);
    const double slope = F.dot(d);
    double t = 1.0;
    StateVec eta_t, F_t;
    double psi_t = psi;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      eta_t = eta + t * d;
      psi_t = evaluate(eta_t, F_t, nullptr);
      if (psi_t < psi && psi_t <= psi + 1e-4 * t * slope) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // Rounding floor reached.
      ok = fn <= 1e-9 * (1.0 + eta.cwiseAbs().maxCoeff());
      break;
    }
    eta = eta_t;
    psi = evaluate(eta, F, &H);
  }
  if (!ok) return false;
  evaluate(eta, F, nullptr);

  sol.U.assign(n, Vec3::Zero());
  for (int b = 0; b < m; ++b) sol.U[idx[b]] = U[b];
  sol.X = lq_rollout(qp, sol.U);
  sol.objective = lq_objective(qp, sol.X, sol.U);
  sol.iterations = it;
  sol.converged = true;
  sol.primal_residual = 0.0;
  sol.dual_residual = F.cwiseAbs().maxCoeff();
  sol.method = SubproblemMethod::TerminalDual;
  sol.state.has_multiplier = true;
  sol.state.multiplier = eta;
  if (warm) {
    sol.state.rho = warm->rho;
    sol.state.y = warm->y;
    sol.state.w = warm->w;
  }
  return true;
}

}  // namespace

Vec3 project_ball_box(const Vec3& v, double radius, const Vec3& lo, const Vec3& hi) {
  auto clip = [&](const Vec3& x) { return Vec3(x.cwiseMax(lo).cwiseMin(hi)); };
  if (radius <= 0.0) return Vec3::Zero();
  const Vec3 c = clip(v);
  if (c.norm() <= radius) return c;
  // Largest s in [0, 1] with ||clip(s v)|| <= radius.
  double a = 0.0, b = 1.0;
  for (int k = 0; k < 200 && b - a > 1e-17; ++k) {
    const double s = 0.5 * (a + b);
    if (clip(s * v).norm() <= radius) a = s;
    else b = s;
  }
  Vec3 u = clip(a * v);
  const double nu = u.norm();
  if (nu > radius) u *= radius / nu;
  return u;
}

std::vector<StateVec> lq_rollout(const LqProblem& qp, const std::vector<Vec3>& U) {
  const int n = static_cast<int>(qp.stages.size());
  std::vector<StateVec> X(n + 1);
  X[0] = qp.x0;
  for (int i = 0; i < n; ++i) {
    const LqStage& st = qp.stages[i];
    X[i + 1] = st.A * X[i] + st.c;
    if (st.has_control) X[i + 1] += st.B * U[i];
  }
  return X;
}

double lq_objective(const LqProblem& qp, const std::vector<StateVec>& X, const std::vector<Vec3>& U) {
  const StateVec e = X.back() - qp.x_ref;
  double J = 0.5 * e.dot(qp.P * e);
  for (std::size_t i = 0; i < qp.stages.size(); ++i)
    if (qp.stages[i].has_control) J += 0.5 * qp.stages[i].r * U[i].squaredNorm();
  return J;
}

LqSolution solve_convex_subproblem(const LqProblem& qp, const AdmmSettings& settings, const AdmmState* warm) {
  const int n = static_cast<int>(qp.stages.size());
  if (n < 1) throw InvalidArgument("subproblem needs at least one stage");
  if (!qp.box_center.empty() && static_cast<int>(qp.box_center.size()) != n + 1)
    throw InvalidArgument("state box needs one center per node");
  for (const auto& st : qp.stages)
    if (st.has_control && (st.umax < 0.0 || st.r < 0.0)) throw InvalidArgument("negative bound or weight");

  int n_ctrl = 0;
  for (const auto& st : qp.stages) n_ctrl += (st.has_control && st.umax > 0.0) ? 1 : 0;

  // Stages with a zero bound carry no freedom; drop their control.
  LqProblem work = qp;
  for (auto& st : work.stages)
    if (st.has_control && st.umax <= 0.0) st.has_control = false;

  if (settings.method != SubproblemMethod::Splitting && work.box_center.empty()) {
    LqSolution dual;
    if (solve_terminal_dual(work, settings, warm, dual)) {
      dual.objective = lq_objective(qp, dual.X, dual.U);
      return dual;
    }
    if (settings.method == SubproblemMethod::TerminalDual)
      throw Error("terminal-dual subproblem solve did not converge");
  } else if (settings.method == SubproblemMethod::TerminalDual) {
    throw InvalidArgument("terminal-dual method does not support a state box");
  }

  Workspace ws(work);
  LqSolution sol;
  std::vector<Vec3> yu(n, Vec3::Zero()), wu(n, Vec3::Zero()), v(n, Vec3::Zero());
  std::vector<Vec3> yb(n, Vec3::Zero()), wb(n, Vec3::Zero()), vb(n, Vec3::Zero());
  auto project_ubox = [&](const Vec3& u, int i) {
    Vec3 lo, hi;
    box_bounds(work.stages[i], lo, hi);
    return Vec3(u.cwiseMax(lo).cwiseMin(hi));
  };
  std::vector<StateVec> yx, wx, a;
  const bool box = ws.has_box();
  const StateVec& mask = ws.mask();
  if (box) {
    yx.assign(n + 1, StateVec::Zero());
    wx.assign(n + 1, StateVec::Zero());
    a.assign(n + 1, StateVec::Zero());
  }
  auto project_box = [&](const StateVec& x, int j) {
    StateVec out = x;
    for (int c = 0; c < 7; ++c)
      if (mask[c] > 0.0) {
        const double lo = work.box_center[j][c] - work.box_radius[c];
        const double hi = work.box_center[j][c] + work.box_radius[c];
        out[c] = std::clamp(x[c], lo, hi);
      }
    return out;
  };

  std::vector<StateVec> X;
  std::vector<Vec3> U;
  const bool use_warm = warm && static_cast<int>(warm->y.size()) == n && static_cast<int>(warm->w.size()) == n &&
                        warm->rho > 0.0;
  double rho = use_warm ? warm->rho : settings.rho;
  ws.factor(rho);

  if (n_ctrl == 0 && !box) {
    ws.lq_solve(v, vb, a, X, U);
    sol.X = lq_rollout(work, std::vector<Vec3>(n, Vec3::Zero()));
    sol.U.assign(n, Vec3::Zero());
    sol.objective = lq_objective(qp, sol.X, sol.U);
    sol.converged = true;
    return sol;
  }

  // Start the copies at the unconstrained LQ optimum, projected.
  for (int i = 0; i < n; ++i) v[i] = Vec3::Zero();
  if (box)
    for (int j = 0; j <= n; ++j) a[j] = work.box_center[j];
  {
    std::vector<StateVec> X0;
    std::vector<Vec3> U0;
    Workspace ws0(work);
    ws0.factor(1e-12);
    ws0.lq_solve(v, vb, a, X0, U0);
    for (int i = 0; i < n; ++i)
      if (work.stages[i].has_control) {
        if (use_warm) {
          yu[i] = project_ball(warm->y[i], work.stages[i].umax);
          wu[i] = warm->w[i];
        } else {
          yu[i] = project_ball(U0[i], work.stages[i].umax);
        }
        if (Workspace::has_ubox(work.stages[i])) yb[i] = project_ubox(yu[i], i);
      }
    if (box)
      for (int j = 1; j <= n; ++j) yx[j] = project_box(X0[j], j);
  }

  const double alpha = settings.alpha;
  int it = 0;
  for (it = 1; it <= settings.max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      v[i] = yu[i] - wu[i];
      vb[i] = yb[i] - wb[i];
    }
    if (box)
      for (int j = 1; j <= n; ++j) a[j] = yx[j] - wx[j];
    ws.lq_solve(v, vb, a, X, U);

    double r_prim = 0.0, r_dual = 0.0, nz = 0.0, ny = 0.0, nw = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!work.stages[i].has_control) continue;
      const Vec3 zr = alpha * U[i] + (1.0 - alpha) * yu[i];
      const Vec3 y_new = project_ball(zr + wu[i], work.stages[i].umax);
      wu[i] += zr - y_new;
      r_prim = std::max(r_prim, (U[i] - y_new).cwiseAbs().maxCoeff());
      r_dual = std::max(r_dual, rho * (y_new - yu[i]).cwiseAbs().maxCoeff());
      nz = std::max(nz, U[i].cwiseAbs().maxCoeff());
      ny = std::max(ny, y_new.cwiseAbs().maxCoeff());
      nw = std::max(nw, rho * wu[i].cwiseAbs().maxCoeff());
      yu[i] = y_new;
      if (Workspace::has_ubox(work.stages[i])) {
        const Vec3 zb = alpha * U[i] + (1.0 - alpha) * yb[i];
        const Vec3 yb_new = project_ubox(zb + wb[i], i);
        wb[i] += zb - yb_new;
        r_prim = std::max(r_prim, (U[i] - yb_new).cwiseAbs().maxCoeff());
        r_dual = std::max(r_dual, rho * (yb_new - yb[i]).cwiseAbs().maxCoeff());
        ny = std::max(ny, yb_new.cwiseAbs().maxCoeff());
        nw = std::max(nw, rho * wb[i].cwiseAbs().maxCoeff());
        yb[i] = yb_new;
      }
    }
    if (box) {
      for (int j = 1; j <= n; ++j) {
        const StateVec zr = alpha * X[j] + (1.0 - alpha) * yx[j];
        const StateVec y_new = project_box(zr + wx[j], j);
        wx[j] += zr - y_new;
        r_prim = std::max(r_prim, mask.cwiseProduct(X[j] - y_new).cwiseAbs().maxCoeff());
        r_dual = std::max(r_dual, rho * mask.cwiseProduct(y_new - yx[j]).cwiseAbs().maxCoeff());
        nz = std::max(nz, mask.cwiseProduct(X[j]).cwiseAbs().maxCoeff());
        ny = std::max(ny, mask.cwiseProduct(y_new).cwiseAbs().maxCoeff());
        nw = std::max(nw, rho * mask.cwiseProduct(wx[j]).cwiseAbs().maxCoeff());
        yx[j] = y_new;
      }
    }
    sol.primal_residual = r_prim;
    sol.dual_residual = r_dual;
    if (it % settings.check_interval == 0 || it == settings.max_iter) {
      const bool ok_p = r_prim <= settings.eps_abs + settings.eps_rel * std::max(nz, ny);
      const bool ok_d = r_dual <= settings.eps_abs + settings.eps_rel * nw;
      if (ok_p && ok_d) {
        sol.converged = true;
        break;
      }
    }
    if (it % settings.adapt_interval == 0) {
      const double pn = r_prim / std::max(std::max(nz, ny), 1e-300);
      const double dn = r_dual / std::max(nw, 1e-300);
      if (pn > 0.0 && dn > 0.0) {
        double scale = std::sqrt(pn / dn);
        scale = std::clamp(scale, 1e-3, 1e3);
        if (scale > 2.0 || scale < 0.5) {
          const double new_rho = std::clamp(rho * scale, 1e-8, 1e8);
          const double ratio = rho / new_rho;
          for (auto& w : wu) w *= ratio;
          for (auto& w : wb) w *= ratio;
          for (auto& w : wx) w *= ratio;
          rho = new_rho;
          ws.factor(rho);
        }
      }
    }
  }
  sol.iterations = std::min(it, settings.max_iter);

  sol.U.assign(n, Vec3::Zero());
  for (int i = 0; i < n; ++i)
    if (work.stages[i].has_control) sol.U[i] = yu[i];
  sol.X = lq_rollout(work, sol.U);
  sol.objective = lq_objective(qp, sol.X, sol.U);
  sol.state.rho = rho;
  sol.state.y = std::move(yu);
  sol.state.w = std::move(wu);
  return sol;
}

}  // namespace orbitour
