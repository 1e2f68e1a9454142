#include <cmath>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "orbitour/averaging.hpp"
#include "orbitour/dynamics.hpp"
#include "orbitour/elements.hpp"
#include "orbitour/errors.hpp"
#include "orbitour/propagator.hpp"
#include "orbitour/random.hpp"
#include "orbitour/scenario.hpp"
#include "orbitour/secular.hpp"

using namespace orbitour;

namespace {

KeplerianState kep(double a, double e, double i_deg, double raan_deg, double argp_deg, double ta_deg) {
  return {a, e, i_deg * kDegToRad, raan_deg * kDegToRad, argp_deg * kDegToRad, ta_deg * kDegToRad};
}

oracle::Vec6 to_vec6(const CartesianState& c) {
  oracle::Vec6 y;
  y << c.r, c.v;
  return y;
}

}  // namespace

TEST_CASE("angle wrapping") {
  CHECK(wrap_two_pi(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_two_pi(7.0) == doctest::Approx(7.0 - kTwoPi));
  CHECK(wrap_pi(4.0) == doctest::Approx(4.0 - kTwoPi));
  CHECK(wrap_pi(-4.0) == doctest::Approx(-4.0 + kTwoPi));
}

TEST_CASE("anomaly conversions invert each other") {
  for (double e : {0.0, 0.01, 0.3, 0.8})
    for (double ta = -3.0; ta < 3.1; ta += 0.37) {
      const double M = true_to_mean_anomaly(ta, e);
      CHECK(wrap_pi(mean_to_true_anomaly(M, e) - ta) == doctest::Approx(0.0).epsilon(1e-10));
    }
}

TEST_CASE("Keplerian and equinoctial elements round trip") {
  Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    const KeplerianState k = kep(rng.uniform(6600, 42000), rng.uniform(0, 0.7), rng.uniform(1, 179),
                                 rng.uniform(0, 360), rng.uniform(0, 360), rng.uniform(0, 360));
    const KeplerianState b = mee_to_kep(kep_to_mee(k));
    CHECK(b.a == doctest::Approx(k.a).epsilon(1e-12));
    CHECK(b.e == doctest::Approx(k.e).epsilon(1e-10));
    CHECK(b.i == doctest::Approx(k.i).epsilon(1e-12));
    CHECK(std::abs(wrap_pi(b.raan - k.raan)) < 1e-9);
    CHECK(std::abs(wrap_pi(b.argp + b.ta - k.argp - k.ta)) < 1e-9);
  }
}

TEST_CASE("equinoctial h, k follow tan(i/2) cos/sin RAAN") {
  const MeeState m = kep_to_mee(kep(7000, 0.0, 60, 30, 0, 0));
  CHECK(m.h == doctest::Approx(std::tan(kPi / 6) * std::cos(kPi / 6)));
  CHECK(m.k == doctest::Approx(std::tan(kPi / 6) * std::sin(kPi / 6)));
  CHECK(m.p == doctest::Approx(7000));
}

TEST_CASE("Cartesian conversion matches the rotation-matrix oracle") {
  Rng rng(5);
  for (int n = 0; n < 100; ++n) {
    const double a = rng.uniform(6700, 30000), e = rng.uniform(0, 0.5), i = rng.uniform(0.05, 3.0),
                 raan = rng.uniform(0, kTwoPi), argp = rng.uniform(0, kTwoPi), ta = rng.uniform(0, kTwoPi);
    const oracle::Vec6 ref = oracle::kepler_to_cartesian(a, e, i, raan, argp, ta);
    const CartesianState c = mee_to_cartesian(kep_to_mee({a, e, i, raan, argp, ta}));
    CHECK((to_vec6(c) - ref).head<3>().norm() < 1e-8 * a);
    CHECK((to_vec6(c) - ref).tail<3>().norm() < 1e-11 * a);
    const MeeState back = cartesian_to_mee(c);
    const MeeState fwd = kep_to_mee({a, e, i, raan, argp, ta});
    CHECK(back.p == doctest::Approx(fwd.p).epsilon(1e-11));
    CHECK(back.f == doctest::Approx(fwd.f).epsilon(1e-9));
    CHECK(std::abs(wrap_pi(back.L - fwd.L)) < 1e-10);
  }
}

TEST_CASE("LVLH basis is orthonormal and right-handed") {
  const CartesianState c = mee_to_cartesian(kep_to_mee(kep(7000, 0.1, 40, 10, 20, 30)));
  const LvlhBasis b = lvlh_basis(c.r, c.v);
  CHECK(b.er.dot(b.etheta) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(b.er.cross(b.etheta).dot(b.ephi) == doctest::Approx(1.0));
  CHECK(b.er.dot(c.r.normalized()) == doctest::Approx(1.0));
}

TEST_CASE("orbit scalars") {
  const OrbitScalars s = orbit_scalars(7000);
  CHECK(s.period == doctest::Approx(2 * oracle::kPi * std::sqrt(7000.0 * 7000 * 7000 / oracle::kMu)));
  CHECK(s.vc == doctest::Approx(std::sqrt(oracle::kMu / 7000)));
}

TEST_CASE("GVE propagation with J2 agrees with a Cartesian J2 integration") {
  const KeplerianState k0 = kep(7000, 0.02, 51.6, 40, 70, 10);
  SpacecraftState s;
  s.mee = kep_to_mee(k0);
  s.mass = 200;
  const double T = orbit_scalars(7000).period;
  PropagatorConfig cfg;
  cfg.step = 5.0;
  const Trajectory tr = propagate_coast(s, 3 * T, 3 * T, cfg);
  const CartesianState got = mee_to_cartesian(from_state_vec(tr.states.back(), 3 * T).mee);
  const oracle::Vec6 ref = oracle::propagate_cartesian_j2(
      oracle::kepler_to_cartesian(k0.a, k0.e, k0.i, k0.raan, k0.argp, k0.ta), 3 * T, 1.0);
  CHECK((to_vec6(got) - ref).head<3>().norm() < 1e-3);  // km after three revolutions
  CHECK(tr.states.back()[6] == doctest::Approx(200.0));
}

TEST_CASE("J2 LVLH acceleration equals the rotated Cartesian J2 term") {
  const KeplerianState k0 = kep(6900, 0.01, 97.4, 100, 30, 75);
  SpacecraftState s;
  s.mee = kep_to_mee(k0);
  const CartesianState c = mee_to_cartesian(s.mee);
  const Eigen::Vector3d full = oracle::j2_gravity(c.r) + oracle::kMu / std::pow(c.r.norm(), 3) * c.r;
  const LvlhBasis b = lvlh_basis(c.r, c.v);
  const PerturbAccel a = j2_accel_lvlh(s);
  CHECK(a.dr == doctest::Approx(full.dot(b.er)).epsilon(1e-10));
  CHECK(a.dt == doctest::Approx(full.dot(b.etheta)).epsilon(1e-10));
  CHECK(a.dn == doctest::Approx(full.dot(b.ephi)).epsilon(1e-10));
}

TEST_CASE("thrust and mass rates") {
  SpacecraftState s;
  s.mee = kep_to_mee(kep(7000, 0, 50, 0, 0, 0));
  s.mass = 100;
  const ThrustEffect t = thrust_and_mass_rates(0.0126, Eigen::Vector3d(0, 1, 0), s, 277.0);
  CHECK(t.accel.dt == doctest::Approx(0.0126 / 100));
  CHECK(t.mdot == doctest::Approx(-0.0126 / (277.0 * oracle::kG0)));
  s.mass = 0.0;
  CHECK_THROWS_AS(thrust_and_mass_rates(0.0126, Eigen::Vector3d(0, 1, 0), s, 277.0), InvalidArgument);
}

TEST_CASE("secular rates follow the closed form") {
  const double a = 7000, e = 0.001, i = 97.0 * kDegToRad;
  const SecularRates r = j2_secular_rates(a, e, i);
  const double n = std::sqrt(oracle::kMu / (a * a * a));
  const double q = oracle::kRe / (a * (1 - e * e));
  CHECK(r.raan_dot == doctest::Approx(-1.5 * oracle::kJ2 * q * q * n * std::cos(i)).epsilon(1e-12));
  CHECK(r.argp_dot ==
        doctest::Approx(0.75 * oracle::kJ2 * q * q * n * (5 * std::cos(i) * std::cos(i) - 1)).epsilon(1e-12));
}

TEST_CASE("sun-synchronous inclination") {
  for (double a : {6878.137, 7000.0, 7200.0})
    CHECK(sso_inclination(a) * kRadToDeg == doctest::Approx(oracle::sso_inclination_deg(a)).epsilon(1e-10));
  CHECK(sso_inclination(7000) * kRadToDeg == doctest::Approx(97.3964).epsilon(0.5 / 97.3964));
}

TEST_CASE("secular propagation advances RAAN linearly") {
  const KeplerianState k0 = kep(7000, 0.0, 97.3964, 10, 0, 0);
  const KeplerianState k1 = propagate_secular(k0, 86400.0);
  const double rate = j2_secular_rates(7000, 0, k0.i).raan_dot;
  CHECK(wrap_pi(k1.raan - k0.raan) == doctest::Approx(rate * 86400.0).epsilon(1e-12));
  CHECK(k1.a == k0.a);
  CHECK(k1.i == k0.i);
}

TEST_CASE("RK4 step converges at fourth order") {
  SpacecraftState s;
  s.mee = kep_to_mee(kep(7000, 0.05, 45, 0, 0, 0));
  s.mass = 200;
  const StateVec x0 = to_state_vec(s);
  const Eigen::Vector3d u(0.001, 0.01, -0.002);
  const double H = 1200.0;
  const StateVec a = rk4_flow(x0, u, H, 80.0, 277, {}), b = rk4_flow(x0, u, H, 40.0, 277, {}),
                 c = rk4_flow(x0, u, H, 20.0, 277, {});
  const double ratio = (a - b).head<6>().norm() / (b - c).head<6>().norm();
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("propagate_numeric lands exactly on segment boundaries") {
  SpacecraftState s;
  s.mee = kep_to_mee(kep(7000, 0, 97, 0, 0, 0));
  s.mass = 200;
  s.epoch = 100.0;
  ControlSchedule sched{{7.0, Eigen::Vector3d(0, 0.0126, 0)}, {33.0, Eigen::Vector3d::Zero()}};
  const Trajectory tr = propagate_numeric(s, sched);
  REQUIRE(tr.times.size() == 3);
  CHECK(tr.times[1] == doctest::Approx(107.0));
  CHECK(tr.times[2] == doctest::Approx(140.0));
  const double dm = 0.0126 * 7.0 / (277.0 * oracle::kG0);
  CHECK(tr.states[1][6] == doctest::Approx(200.0 - dm).epsilon(1e-12));
  CHECK(tr.states[2][6] == tr.states[1][6]);
}

TEST_CASE("mean elements invert the osculating reconstruction") {
  MeanElements m;
  m.a = 7000;
  m.f = 1e-4;
  m.h = std::tan(0.5 * 97.4 * kDegToRad) * std::cos(1.0);
  m.k = std::tan(0.5 * 97.4 * kDegToRad) * std::sin(1.0);
  const SpacecraftState osc = osculating_from_mean(m, 0.3, 200, 0.0);
  // J2 short-period terms make the osculating SMA differ by kilometres.
  CHECK(std::abs(mee_sma(osc.mee) - 7000) > 0.5);
  const MeanElements back = mean_elements(osc);
  CHECK(back.a == doctest::Approx(7000).epsilon(1e-6));
  CHECK(back.i() * kRadToDeg == doctest::Approx(97.4).epsilon(1e-6));
  CHECK(back.e() < 2e-4);
  CHECK(std::abs(wrap_pi(back.raan() - 1.0)) < 1e-5);
}
