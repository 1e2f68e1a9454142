#include "orbitour/averaging.hpp"

#include <cmath>

namespace orbitour {

double MeanElements::e() const { return std::hypot(f, g); }
double MeanElements::i() const { return 2.0 * std::atan(std::hypot(h, k)); }
double MeanElements::raan() const { return wrap_two_pi(std::atan2(k, h)); }

MeanElements mean_elements(const SpacecraftState& state, const PhysicalConstants& consts, int samples,
                           double max_step) {
  StateVec x = to_state_vec(state);
  const double a0 = mee_sma(state.mee);
  const double dt = orbit_scalars(a0, consts).period / samples;
  MeanElements m;
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  for (int s = 0; s < samples; ++s) {
    m.a += x[0] / (1.0 - x[1] * x[1] - x[2] * x[2]);
    m.f += x[1];
    m.g += x[2];
    m.h += x[3];
    m.k += x[4];
    x = rk4_flow(x, zero, dt, max_step, 1.0, consts, true);
  }
  m.a /= samples;
  m.f /= samples;
  m.g /= samples;
  m.h /= samples;
  m.k /= samples;
  return m;
}

SpacecraftState osculating_from_mean(const MeanElements& target, double L, double mass, double epoch,
                                     const PhysicalConstants& consts, int iterations) {
  SpacecraftState s;
  s.mee = {target.a * (1.0 - target.f * target.f - target.g * target.g), target.f, target.g, target.h, target.k, L, 1};
  s.mass = mass;
  s.epoch = epoch;
  for (int it = 0; it < iterations; ++it) {
    const MeanElements m = mean_elements(s, consts);
    s.mee.p += (target.a - m.a) * (1.0 - s.mee.f * s.mee.f - s.mee.g * s.mee.g);
    s.mee.f += target.f - m.f;
    s.mee.g += target.g - m.g;
    s.mee.h += target.h - m.h;
    s.mee.k += target.k - m.k;
  }
  return s;
}

}  // namespace orbitour
