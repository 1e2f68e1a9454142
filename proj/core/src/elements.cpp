#include "orbitour/elements.hpp"

#include <cmath>

#include <Eigen/Geometry>

#include "orbitour/errors.hpp"

namespace orbitour {

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double wrap_pi(double angle) {
  double r = wrap_two_pi(angle);
  return r > kPi ? r - kTwoPi : r;
}

MeeState kep_to_mee(const KeplerianState& kep, int retrograde) {
  if (retrograde != 1 && retrograde != -1) throw InvalidArgument("retrograde factor must be +1 or -1");
  if (!(kep.a > 0.0)) throw InvalidArgument("semi-major axis must be positive");
  if (kep.e < 0.0 || kep.e >= 1.0) throw InvalidArgument("eccentricity must lie in [0, 1)");
  if (kep.i < 0.0 || kep.i > kPi) throw InvalidArgument("inclination must lie in [0, pi]");
  if (retrograde == 1 && std::abs(kep.i - kPi) < 1e-12) throw SingularState("i = pi is singular for I = +1");
  if (retrograde == -1 && kep.i < 1e-12) throw SingularState("i = 0 is singular for I = -1");

  MeeState m;
  m.retrograde = retrograde;
  m.p = kep.a * (1.0 - kep.e * kep.e);
  const double lon_peri = kep.argp + retrograde * kep.raan;
  m.f = kep.e * std::cos(lon_peri);
  m.g = kep.e * std::sin(lon_peri);
  const double t = retrograde == 1 ? std::tan(0.5 * kep.i) : 1.0 / std::tan(0.5 * kep.i);
  m.h = t * std::cos(kep.raan);
  m.k = t * std::sin(kep.raan);
  m.L = wrap_two_pi(kep.ta + lon_peri);
  return m;
}

KeplerianState mee_to_kep(const MeeState& mee) {
  const double e2 = mee.f * mee.f + mee.g * mee.g;
  if (e2 >= 1.0) throw InvalidArgument("f^2 + g^2 >= 1: not a closed orbit");
  if (!(mee.p > 0.0)) throw InvalidArgument("semi-latus rectum must be positive");
  const int I = mee.retrograde;

  KeplerianState kep;
  kep.e = std::sqrt(e2);
  kep.a = mee.p / (1.0 - e2);
  const double t = std::hypot(mee.h, mee.k);
  kep.i = I == 1 ? 2.0 * std::atan(t) : 2.0 * std::atan2(1.0, t);
  kep.raan = t > 0.0 ? wrap_two_pi(std::atan2(mee.k, mee.h)) : 0.0;
  const double lon_peri = kep.e > 0.0 ? std::atan2(mee.g, mee.f) : I * kep.raan;
  kep.argp = kep.e > 0.0 ? wrap_two_pi(lon_peri - I * kep.raan) : 0.0;
  kep.ta = wrap_two_pi(mee.L - lon_peri);
  return kep;
}

OrbitScalars orbit_scalars(double a, const PhysicalConstants& consts) {
  if (!(a > 0.0)) throw InvalidArgument("semi-major axis must be positive");
  OrbitScalars s;
  s.n = std::sqrt(consts.mu / (a * a * a));
  s.period = kTwoPi / s.n;
  s.vc = std::sqrt(consts.mu / a);
  return s;
}

double true_to_mean_anomaly(double ta, double e) {
  const double E = std::atan2(std::sqrt(1.0 - e * e) * std::sin(ta), e + std::cos(ta));
  return wrap_two_pi(E - e * std::sin(E));
}

double mean_to_true_anomaly(double mean_anomaly, double e) {
  const double M = wrap_two_pi(mean_anomaly);
  if (e == 0.0) return M;
  double E = e < 0.8 ? M : kPi;
  for (int it = 0; it < 50; ++it) {
    const double d = (E - e * std::sin(E) - M) / (1.0 - e * std::cos(E));
    E -= d;
    if (std::abs(d) < 1e-15) break;
  }
  const double ta = 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(0.5 * E), std::sqrt(1.0 - e) * std::cos(0.5 * E));
  return wrap_two_pi(ta);
}

CartesianState mee_to_cartesian(const MeeState& mee, const PhysicalConstants& consts) {
  if (mee.retrograde != 1) throw InvalidArgument("Cartesian conversion supports I = +1 only");
  const double h = mee.h, k = mee.k, f = mee.f, g = mee.g;
  const double cl = std::cos(mee.L), sl = std::sin(mee.L);
  const double alpha2 = h * h - k * k;
  const double s2 = 1.0 + h * h + k * k;
  const double w = 1.0 + f * cl + g * sl;
  if (w <= 0.0) throw SingularState("w <= 0");
  const double r = mee.p / w;
  const double sqmp = std::sqrt(consts.mu / mee.p);

  CartesianState out;
  out.r = (r / s2) * Eigen::Vector3d(cl + alpha2 * cl + 2.0 * h * k * sl,
                                     sl - alpha2 * sl + 2.0 * h * k * cl,
                                     2.0 * (h * sl - k * cl));
  out.v = (-sqmp / s2) * Eigen::Vector3d(sl + alpha2 * sl - 2.0 * h * k * cl + g - 2.0 * f * h * k + alpha2 * g,
                                         -cl + alpha2 * cl + 2.0 * h * k * sl - f + 2.0 * g * h * k + alpha2 * f,
                                         -2.0 * (h * cl + k * sl + f * h + g * k));
  return out;
}

MeeState cartesian_to_mee(const CartesianState& rv, const PhysicalConstants& consts) {
  const Eigen::Vector3d hvec = rv.r.cross(rv.v);
  const double hn = hvec.norm();
  if (hn == 0.0) throw SingularState("zero angular momentum");
  const Eigen::Vector3d hh = hvec / hn;
  if (hh.z() <= -1.0 + 1e-14) throw SingularState("retrograde equatorial orbit");

  MeeState m;
  m.p = hn * hn / consts.mu;
  m.h = -hh.y() / (1.0 + hh.z());
  m.k = hh.x() / (1.0 + hh.z());
  const double h = m.h, k = m.k;
  const double s2 = 1.0 + h * h + k * k;
  const double alpha2 = h * h - k * k;
  const Eigen::Vector3d fhat = Eigen::Vector3d(1.0 + alpha2, 2.0 * h * k, -2.0 * k) / s2;
  const Eigen::Vector3d ghat = Eigen::Vector3d(2.0 * h * k, 1.0 - alpha2, 2.0 * h) / s2;
  const Eigen::Vector3d evec = rv.v.cross(hvec) / consts.mu - rv.r.normalized();
  m.f = evec.dot(fhat);
  m.g = evec.dot(ghat);
  m.L = wrap_two_pi(std::atan2(rv.r.dot(ghat), rv.r.dot(fhat)));
  return m;
}

LvlhBasis lvlh_basis(const Eigen::Vector3d& r, const Eigen::Vector3d& v) {
  const double rn = r.norm();
  const Eigen::Vector3d hvec = r.cross(v);
  const double hn = hvec.norm();
  if (rn == 0.0 || hn <= 1e-14 * rn * v.norm()) throw InvalidArgument("degenerate position/velocity for LVLH basis");
  LvlhBasis b;
  b.er = r / rn;
  b.ephi = hvec / hn;
  b.etheta = b.ephi.cross(b.er);
  return b;
}

double mee_sma(const MeeState& mee) { return mee.p / (1.0 - mee.f * mee.f - mee.g * mee.g); }

double mee_ecc(const MeeState& mee) { return std::hypot(mee.f, mee.g); }

double mee_inc(const MeeState& mee) {
  const double t = std::hypot(mee.h, mee.k);
  return mee.retrograde == 1 ? 2.0 * std::atan(t) : 2.0 * std::atan2(1.0, t);
}

}  // namespace orbitour
