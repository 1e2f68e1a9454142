#pragma once

// Reference computations written directly from first principles, sharing no code
// with the library, so tests compare two independent derivations.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline constexpr double kMu = 398600.4418;
inline constexpr double kRe = 6378.137;
inline constexpr double kJ2 = 1.08263e-3;
inline constexpr double kG0 = 9.80665e-3;
inline constexpr double kPi = 3.14159265358979323846;

// Two-impulse Hohmann transfer between circular orbits, from vis-viva.
// Vis-viva in extended precision; the differences cancel for nearby radii.
inline double hohmann_dv(double r0, double r1, double mu = kMu) {
  using L = long double;
  const L a0 = r0, a1 = r1, m = mu, at = (a0 + a1) / 2;
  const L v0 = std::sqrt(m / a0), v1 = std::sqrt(m / a1);
  const L vp = std::sqrt(m * (2 / a0 - 1 / at));
  const L va = std::sqrt(m * (2 / a1 - 1 / at));
  return static_cast<double>(std::abs(vp - v0) + std::abs(v1 - va));
}

// Pure plane change on a circular orbit.
inline double plane_change_dv(double di, double r, double mu = kMu) {
  return 2.0 * std::sqrt(mu / r) * std::sin(0.5 * std::abs(di));
}

inline double rocket_fuel(double m0, double dv, double isp) { return m0 * (1.0 - std::exp(-dv / (isp * kG0))); }

// Node regression rate matching one revolution per year, solved for cos i.
inline double sso_inclination_deg(double a, double e = 0.0) {
  const double rate = 2.0 * kPi / (365.25 * 86400.0);
  const double p = a * (1.0 - e * e);
  const double n = std::sqrt(kMu / (a * a * a));
  const double c = -rate / (1.5 * kJ2 * (kRe / p) * (kRe / p) * n);
  return std::acos(c) * 180.0 / kPi;
}

// Cartesian point-mass + J2 acceleration in the Earth-fixed-axis inertial frame.
inline Eigen::Vector3d j2_gravity(const Eigen::Vector3d& r) {
  const double rn = r.norm();
  const double z2 = r.z() * r.z() / (rn * rn);
  const double k = 1.5 * kJ2 * kMu * kRe * kRe / std::pow(rn, 5);
  Eigen::Vector3d a = -kMu / (rn * rn * rn) * r;
  a.x() += k * r.x() * (5.0 * z2 - 1.0);
  a.y() += k * r.y() * (5.0 * z2 - 1.0);
  a.z() += k * r.z() * (5.0 * z2 - 3.0);
  return a;
}

using Vec6 = Eigen::Matrix<double, 6, 1>;

// Fixed-step classical RK4 on the Cartesian state.
inline Vec6 propagate_cartesian_j2(Vec6 y, double duration, double step) {
  auto f = [](const Vec6& s) {
    Vec6 d;
    d.head<3>() = s.tail<3>();
    d.tail<3>() = j2_gravity(s.head<3>());
    return d;
  };
  const int n = static_cast<int>(std::ceil(duration / step));
  const double h = duration / n;
  for (int i = 0; i < n; ++i) {
    const Vec6 k1 = f(y), k2 = f(y + 0.5 * h * k1), k3 = f(y + 0.5 * h * k2), k4 = f(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

// Classical orbital elements (a, e, i, raan, argp, ta) to Cartesian.
inline Vec6 kepler_to_cartesian(double a, double e, double i, double raan, double argp, double ta) {
  const double p = a * (1.0 - e * e);
  const double r = p / (1.0 + e * std::cos(ta));
  const Eigen::Vector3d rp(r * std::cos(ta), r * std::sin(ta), 0.0);
  const Eigen::Vector3d vp(-std::sqrt(kMu / p) * std::sin(ta), std::sqrt(kMu / p) * (e + std::cos(ta)), 0.0);
  const Eigen::Matrix3d R = (Eigen::AngleAxisd(raan, Eigen::Vector3d::UnitZ()) *
                             Eigen::AngleAxisd(i, Eigen::Vector3d::UnitX()) *
                             Eigen::AngleAxisd(argp, Eigen::Vector3d::UnitZ()))
                                .toRotationMatrix();
  Vec6 y;
  y.head<3>() = R * rp;
  y.tail<3>() = R * vp;
  return y;
}

// Central differences extrapolated twice (h, h/2, h/4): truncation error O(h^6).
inline Eigen::MatrixXd richardson_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd J(f0.size(), x.size());
  for (int j = 0; j < x.size(); ++j) {
    auto cd = [&](double s) {
      Eigen::VectorXd xp = x, xm = x;
      xp[j] += s;
      xm[j] -= s;
      return Eigen::VectorXd((f(xp) - f(xm)) / (2.0 * s));
    };
    const Eigen::VectorXd d1 = cd(h[j]), d2 = cd(0.5 * h[j]), d4 = cd(0.25 * h[j]);
    const Eigen::VectorXd r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d4 - d2) / 3.0;
    J.col(j) = (16.0 * r2 - r1) / 15.0;
  }
  return J;
}

// Equality-constrained LQ problem over z = (x_1..x_N, u_0..u_{N-1}) solved by one dense KKT system.
struct DenseLq {
  std::vector<Eigen::MatrixXd> A, B;
  std::vector<Eigen::VectorXd> c;
  Eigen::VectorXd x0;
  Eigen::MatrixXd P;
  Eigen::VectorXd x_ref;
  std::vector<double> r;
};

struct DenseLqSolution {
  std::vector<Eigen::VectorXd> X, U;
  double objective = 0.0;
};

inline DenseLqSolution solve_dense_kkt(const DenseLq& q) {
  const int N = static_cast<int>(q.A.size());
  const int nx = static_cast<int>(q.x0.size());
  const int nu = static_cast<int>(q.B[0].cols());
  const int nz = N * nx + N * nu, ne = N * nx;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nz, nz);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(nz);
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(ne, nz);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(ne);
  const int xN = (N - 1) * nx;
  H.block(xN, xN, nx, nx) = q.P;
  g.segment(xN, nx) = -q.P * q.x_ref;
  for (int i = 0; i < N; ++i) {
    const int ui = N * nx + i * nu;
    H.block(ui, ui, nu, nu) = q.r[i] * Eigen::MatrixXd::Identity(nu, nu);
    // x_{i+1} - A x_i - B u_i = c_i
    E.block(i * nx, i * nx, nx, nx) = Eigen::MatrixXd::Identity(nx, nx);
    if (i > 0) E.block(i * nx, (i - 1) * nx, nx, nx) = -q.A[i];
    E.block(i * nx, ui, nx, nu) = -q.B[i];
    e.segment(i * nx, nx) = q.c[i] + (i == 0 ? Eigen::VectorXd(q.A[0] * q.x0) : Eigen::VectorXd::Zero(nx));
  }
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nz + ne, nz + ne);
  K.topLeftCorner(nz, nz) = H;
  K.topRightCorner(nz, ne) = E.transpose();
  K.bottomLeftCorner(ne, nz) = E;
  Eigen::VectorXd rhs(nz + ne);
  rhs << -g, e;
  const Eigen::VectorXd sol = K.fullPivLu().solve(rhs);
  DenseLqSolution out;
  out.X.push_back(q.x0);
  for (int i = 0; i < N; ++i) out.X.push_back(sol.segment(i * nx, nx));
  for (int i = 0; i < N; ++i) out.U.push_back(sol.segment(N * nx + i * nu, nu));
  const Eigen::VectorXd d = out.X.back() - q.x_ref;
  out.objective = 0.5 * d.dot(q.P * d);
  for (int i = 0; i < N; ++i) out.objective += 0.5 * q.r[i] * out.U[i].squaredNorm();
  return out;
}

// Ball-constrained version, condensed onto the controls and solved by accelerated
// projected gradient (FISTA). Slow but independent of any splitting scheme.
inline double solve_ball_fista(const DenseLq& q, const std::vector<double>& umax, int iters = 200000) {
  const int N = static_cast<int>(q.A.size());
  const int nx = static_cast<int>(q.x0.size());
  const int nu = static_cast<int>(q.B[0].cols());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nx, nu * N);
  Eigen::VectorXd h = q.x0;
  for (int i = 0; i < N; ++i) {
    G = q.A[i] * G;
    G.block(0, nu * i, nx, nu) = q.B[i];
    h = q.A[i] * h + q.c[i];
  }
  Eigen::VectorXd rdiag(nu * N);
  for (int i = 0; i < N; ++i) rdiag.segment(nu * i, nu).setConstant(q.r[i]);
  const Eigen::MatrixXd H = G.transpose() * q.P * G + Eigen::MatrixXd(rdiag.asDiagonal());
  const Eigen::VectorXd g = G.transpose() * q.P * (h - q.x_ref);
  const double L = H.norm();  // Frobenius norm bounds the largest eigenvalue
  Eigen::VectorXd x = Eigen::VectorXd::Zero(nu * N), y = x, xo = x;
  double t = 1.0;
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXd z = y - (H * y + g) / L;
    for (int i = 0; i < N; ++i) {
      auto b = z.segment(nu * i, nu);
      const double n = b.norm();
      if (n > umax[i]) b *= umax[i] / n;
    }
    x = z;
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = x + (t - 1.0) / tn * (x - xo);
    xo = x;
    t = tn;
  }
  const Eigen::VectorXd d = h - q.x_ref;
  return 0.5 * x.dot(H * x) + g.dot(x) + 0.5 * d.dot(q.P * d);
}

}  // namespace oracle
