#include "orbitour/secular.hpp"

#include <cmath>

#include "orbitour/errors.hpp"

namespace orbitour {

namespace {

double j2_factor(double a, double e, const PhysicalConstants& c) {
  const double p = a * (1.0 - e * e);
  if (!(p > 0.0)) throw InvalidArgument("a(1 - e^2) must be positive");
  const double q = c.re / p;
  return c.j2 * q * q;
}

}  // namespace

SecularRates j2_secular_rates(double a, double e, double i, const PhysicalConstants& consts) {
  const double n = orbit_scalars(a, consts).n;
  const double jf = j2_factor(a, e, consts);
  const double ci = std::cos(i);
  SecularRates r;
  r.raan_dot = -1.5 * jf * n * ci;
  r.argp_dot = 0.75 * jf * n * (5.0 * ci * ci - 1.0);
  return r;
}

double j2_mean_anomaly_rate(double a, double e, double i, const PhysicalConstants& consts) {
  const double n = orbit_scalars(a, consts).n;
  const double jf = j2_factor(a, e, consts);
  const double ci = std::cos(i);
  return n * (1.0 + 0.75 * jf * std::sqrt(1.0 - e * e) * (3.0 * ci * ci - 1.0));
}

double j2_arglat_rate(double a, double e, double i, const PhysicalConstants& consts) {
  return j2_secular_rates(a, e, i, consts).argp_dot + j2_mean_anomaly_rate(a, e, i, consts);
}

double j2_longitude_rate(double a, double e, double i, const PhysicalConstants& consts) {
  const SecularRates s = j2_secular_rates(a, e, i, consts);
  return s.raan_dot + s.argp_dot + j2_mean_anomaly_rate(a, e, i, consts);
}

KeplerianState propagate_secular(const KeplerianState& kep, double dt, const PhysicalConstants& consts) {
  if (dt < 0.0) throw InvalidArgument("propagate_secular: negative dt");
  if (dt == 0.0) return kep;
  const SecularRates s = j2_secular_rates(kep.a, kep.e, kep.i, consts);
  KeplerianState out = kep;
  out.raan = wrap_two_pi(kep.raan + s.raan_dot * dt);
  out.argp = wrap_two_pi(kep.argp + s.argp_dot * dt);
  const double M0 = true_to_mean_anomaly(kep.ta, kep.e);
  const double M1 = M0 + j2_mean_anomaly_rate(kep.a, kep.e, kep.i, consts) * dt;
  out.ta = mean_to_true_anomaly(M1, kep.e);
  return out;
}

SpacecraftState propagate_secular(const SpacecraftState& state, double dt, const PhysicalConstants& consts) {
  if (dt < 0.0) throw InvalidArgument("propagate_secular: negative dt");
  SpacecraftState out = state;
  if (dt == 0.0) return out;
  const KeplerianState kep = propagate_secular(mee_to_kep(state.mee), dt, consts);
  out.mee = kep_to_mee(kep, state.mee.retrograde);
  out.epoch = state.epoch + dt;
  return out;
}

}  // namespace orbitour
