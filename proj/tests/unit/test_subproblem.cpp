#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "orbitour/convex_subproblem.hpp"

using namespace orbitour;

namespace {

struct Instance {
  LqProblem qp;
  oracle::DenseLq dense;
};

Instance random_instance(unsigned seed, int N, double umax, bool skip_some_controls = false) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  Instance in;
  in.qp.stages.resize(N);
  for (int s = 0; s < N; ++s) {
    LqStage& st = in.qp.stages[s];
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) st.A(i, j) = (i == j) + 0.1 * nd(gen);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 3; ++j) st.B(i, j) = nd(gen);
    for (int i = 0; i < 7; ++i) st.c[i] = 0.1 * nd(gen);
    st.has_control = !(skip_some_controls && s % 3 == 1);
    if (!st.has_control) st.B.setZero();
    st.umax = umax;
    st.r = 0.5;
  }
  for (int i = 0; i < 7; ++i) {
    in.qp.x0[i] = nd(gen);
    in.qp.x_ref[i] = nd(gen);
  }
  Eigen::Matrix<double, 7, 7> M;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) M(i, j) = nd(gen);
  in.qp.P = M * M.transpose();

  oracle::DenseLq& d = in.dense;
  for (const LqStage& st : in.qp.stages) {
    d.A.push_back(st.A);
    d.B.push_back(st.B);
    d.c.push_back(st.c);
    d.r.push_back(st.r);
  }
  d.x0 = in.qp.x0;
  d.P = in.qp.P;
  d.x_ref = in.qp.x_ref;
  return in;
}

AdmmSettings with(SubproblemMethod m) {
  AdmmSettings s;
  s.method = m;
  return s;
}

}  // namespace

TEST_CASE("ball-box projection") {
  const Eigen::Vector3d lo(-1, -1, -1), hi(1, 1, 1);
  const Eigen::Vector3d inside(0.1, 0.2, 0.3);
  CHECK((project_ball_box(inside, 1.0, lo, hi) - inside).norm() == 0.0);
  const Eigen::Vector3d far(10, 0, 0);
  CHECK(project_ball_box(far, 0.5, lo, hi).isApprox(Eigen::Vector3d(0.5, 0, 0)));
  const Eigen::Vector3d p = project_ball_box(Eigen::Vector3d(3, 3, 0), 10.0, lo, hi);
  CHECK(p.isApprox(Eigen::Vector3d(1, 1, 0)));
  // Optimality against random feasible points.
  std::mt19937 gen(1);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Vector3d v(U(gen), U(gen), U(gen));
    const Eigen::Vector3d q = project_ball_box(v, 1.2, lo, Eigen::Vector3d(0.5, 1, 1));
    CHECK(q.norm() <= 1.2 + 1e-12);
    CHECK(q[0] <= 0.5 + 1e-12);
    for (int k = 0; k < 20; ++k) {
      Eigen::Vector3d z(U(gen), U(gen), U(gen));
      if (z.norm() > 1.2 || (z.array() < lo.array()).any() || z[0] > 0.5 || (z.array() > 1).any()) continue;
      CHECK((v - q).norm() <= (v - z).norm() + 1e-12);
    }
  }
}

TEST_CASE("inactive constraints reproduce the dense KKT solution") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const Instance in = random_instance(seed, 6, 1e6, seed == 3);
    const oracle::DenseLqSolution ref = oracle::solve_dense_kkt(in.dense);
    for (SubproblemMethod m : {SubproblemMethod::Splitting, SubproblemMethod::TerminalDual}) {
      const LqSolution sol = solve_convex_subproblem(in.qp, with(m));
      CHECK(sol.converged);
      CHECK(sol.objective == doctest::Approx(ref.objective).epsilon(1e-7));
      for (int i = 0; i < 6; ++i) CHECK((sol.U[i] - ref.U[i]).norm() <= 1e-5 * (1 + ref.U[i].norm()));
    }
  }
}

TEST_CASE("active ball constraints match projected gradient") {
  for (unsigned seed : {4u, 5u}) {
    const Instance in = random_instance(seed, 5, 0.3);
    const double ref = oracle::solve_ball_fista(in.dense, std::vector<double>(5, 0.3));
    for (SubproblemMethod m : {SubproblemMethod::Splitting, SubproblemMethod::TerminalDual}) {
      const LqSolution sol = solve_convex_subproblem(in.qp, with(m));
      CHECK(sol.converged);
      CHECK(sol.objective == doctest::Approx(ref).epsilon(1e-6));
      for (const auto& u : sol.U) CHECK(u.norm() <= 0.3 * (1 + 1e-12));
      // Returned states are the exact rollout of the returned controls.
      const auto X = lq_rollout(in.qp, sol.U);
      for (std::size_t k = 0; k < X.size(); ++k) CHECK((X[k] - sol.X[k]).norm() < 1e-9 * (1 + X[k].norm()));
      CHECK(lq_objective(in.qp, sol.X, sol.U) == doctest::Approx(sol.objective));
    }
  }
}

TEST_CASE("control trust box is respected") {
  Instance in = random_instance(7, 5, 1.0);
  for (LqStage& st : in.qp.stages) {
    st.u_center = Eigen::Vector3d(0.1, -0.1, 0.0);
    st.u_radius = 0.05;
  }
  const LqSolution sol = solve_convex_subproblem(in.qp);
  CHECK(sol.converged);
  for (const auto& u : sol.U) CHECK((u - Eigen::Vector3d(0.1, -0.1, 0.0)).cwiseAbs().maxCoeff() <= 0.05 + 1e-9);
}

TEST_CASE("state box forces the splitting method") {
  Instance in = random_instance(8, 5, 1e6);
  const oracle::DenseLqSolution free = oracle::solve_dense_kkt(in.dense);
  in.qp.box_center.assign(6, StateVec::Zero());
  in.qp.box_radius = StateVec::Constant(1e6);
  const LqSolution loose = solve_convex_subproblem(in.qp);
  CHECK(loose.method == SubproblemMethod::Splitting);
  CHECK(loose.objective == doctest::Approx(free.objective).epsilon(1e-6));
  double peak = 0.0;
  for (const auto& x : free.X) peak = std::max(peak, x.cwiseAbs().maxCoeff());
  in.qp.box_radius = StateVec::Constant(0.5 * peak);
  const LqSolution tight = solve_convex_subproblem(in.qp);
  CHECK(tight.objective >= loose.objective - 1e-9);
}

TEST_CASE("warm start cuts the iteration count") {
  const Instance in = random_instance(9, 8, 0.3);
  const LqSolution cold = solve_convex_subproblem(in.qp, with(SubproblemMethod::Splitting));
  const LqSolution warm = solve_convex_subproblem(in.qp, with(SubproblemMethod::Splitting), &cold.state);
  CHECK(warm.iterations < cold.iterations);
  CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-7));
}
