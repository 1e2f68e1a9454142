#include "orbitour/dynamics.hpp"

#include <cmath>

#include "orbitour/errors.hpp"

namespace orbitour {

namespace {

void require_prograde(const MeeState& m) {
  if (m.retrograde != 1) throw InvalidArgument("dynamics are implemented for I = +1");
}

}  // namespace

MeeRates gve_rates(const SpacecraftState& state, const PerturbAccel& a, const PhysicalConstants& consts) {
  const MeeState& m = state.mee;
  require_prograde(m);
  if (!(m.p > 0.0)) throw SingularState("p <= 0");
  const double cl = std::cos(m.L), sl = std::sin(m.L);
  const double w = 1.0 + m.f * cl + m.g * sl;
  if (w <= 0.0) throw SingularState("w <= 0");
  const double s2 = 1.0 + m.h * m.h + m.k * m.k;
  const double v = m.h * sl - m.k * cl;
  const double spm = std::sqrt(m.p / consts.mu);

  MeeRates r;
  r.dp = 2.0 * m.p / w * spm * a.dt;
  r.df = spm * (a.dr * sl + ((w + 1.0) * cl + m.f) / w * a.dt - m.g * v / w * a.dn);
  // The sign of the normal-thrust term in dg/dt is + in the standard form; it is
  // the one consistent with a Cartesian J2 reference.
  r.dg = spm * (-a.dr * cl + ((w + 1.0) * sl + m.g) / w * a.dt + m.f * v / w * a.dn);
  r.dh = spm * s2 / (2.0 * w) * cl * a.dn;
  r.dk = spm * s2 / (2.0 * w) * sl * a.dn;
  r.dL = std::sqrt(consts.mu * m.p) * (w / m.p) * (w / m.p) + spm * v / w * a.dn;
  return r;
}

PerturbAccel j2_accel_lvlh(const SpacecraftState& state, const PhysicalConstants& consts) {
  const MeeState& m = state.mee;
  require_prograde(m);
  const double cl = std::cos(m.L), sl = std::sin(m.L);
  const double w = 1.0 + m.f * cl + m.g * sl;
  if (w <= 0.0) throw SingularState("w <= 0");
  const double r = m.p / w;
  const double s2 = 1.0 + m.h * m.h + m.k * m.k;
  const double v = m.h * sl - m.k * cl;
  const double c = consts.mu * consts.j2 * consts.re * consts.re / (r * r * r * r);
  const double s4 = s2 * s2;

  PerturbAccel out;
  out.dr = -1.5 * c * (1.0 - 12.0 * v * v / s4);
  out.dt = -12.0 * c * v * (m.h * cl + m.k * sl) / s4;
  out.dn = -6.0 * c * v * (1.0 - m.h * m.h - m.k * m.k) / s4;
  return out;
}

ThrustEffect thrust_and_mass_rates(double thrust, const Eigen::Vector3d& direction, const SpacecraftState& state,
                                   double isp, const PhysicalConstants& consts) {
  if (!(state.mass > 0.0)) throw InvalidArgument("mass must be positive");
  if (thrust < 0.0) throw InvalidArgument("thrust must be non-negative");
  ThrustEffect out;
  if (thrust == 0.0) return out;
  const double a = thrust / state.mass;
  out.accel.dr = a * direction.x();
  out.accel.dt = a * direction.y();
  out.accel.dn = a * direction.z();
  out.mdot = -thrust / (isp * consts.g0);
  return out;
}

StateVec to_state_vec(const SpacecraftState& s) {
  StateVec x;
  x << s.mee.p, s.mee.f, s.mee.g, s.mee.h, s.mee.k, s.mee.L, s.mass;
  return x;
}

SpacecraftState from_state_vec(const StateVec& x, double epoch, int retrograde) {
  SpacecraftState s;
  s.mee = {x[0], x[1], x[2], x[3], x[4], x[5], retrograde};
  s.mass = x[6];
  s.epoch = epoch;
  return s;
}

StateVec state_rhs(const StateVec& x, const Eigen::Vector3d& u, double isp, const PhysicalConstants& consts,
                   bool j2) {
  const double p = x[0], f = x[1], g = x[2], h = x[3], k = x[4], L = x[5], mass = x[6];
  if (!(p > 0.0)) throw SingularState("p <= 0");
  if (!(mass > 0.0)) throw SingularState("mass <= 0");
  const double cl = std::cos(L), sl = std::sin(L);
  const double w = 1.0 + f * cl + g * sl;
  if (w <= 0.0) throw SingularState("w <= 0");
  const double s2 = 1.0 + h * h + k * k;
  const double v = h * sl - k * cl;
  const double spm = std::sqrt(p / consts.mu);

  double ar = u.x() / mass, at = u.y() / mass, an = u.z() / mass;
  if (j2) {
    const double r = p / w;
    const double r2 = r * r;
    const double c = consts.mu * consts.j2 * consts.re * consts.re / (r2 * r2);
    const double s4 = s2 * s2;
    ar += -1.5 * c * (1.0 - 12.0 * v * v / s4);
    at += -12.0 * c * v * (h * cl + k * sl) / s4;
    an += -6.0 * c * v * (1.0 - h * h - k * k) / s4;
  }

  StateVec d;
  const double iw = 1.0 / w;
  d[0] = 2.0 * p * iw * spm * at;
  d[1] = spm * (ar * sl + ((w + 1.0) * cl + f) * iw * at - g * v * iw * an);
  d[2] = spm * (-ar * cl + ((w + 1.0) * sl + g) * iw * at + f * v * iw * an);
  d[3] = spm * s2 * 0.5 * iw * cl * an;
  d[4] = spm * s2 * 0.5 * iw * sl * an;
  d[5] = std::sqrt(consts.mu * p) * (w / p) * (w / p) + spm * v * iw * an;
  d[6] = -u.norm() / (isp * consts.g0);
  return d;
}

}  // namespace orbitour
