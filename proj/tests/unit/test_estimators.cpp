#include <cmath>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "orbitour/errors.hpp"
#include "orbitour/maneuvers.hpp"
#include "orbitour/random.hpp"
#include "orbitour/scenario.hpp"

using namespace orbitour;

TEST_CASE("Hohmann legs match vis-viva") {
  Rng rng(3);
  for (int n = 0; n < 200; ++n) {
    const double r0 = rng.uniform(6600, 8000), r1 = rng.uniform(6600, 8000);
    CHECK(mht_delta_v(r0, r1).total() == doctest::Approx(oracle::hohmann_dv(r0, r1)).epsilon(1e-12));
  }
  const HohmannLegs up = mht_delta_v(6950, 7000);
  CHECK(up.departure > 0.0);
  CHECK(up.circularization > 0.0);
  CHECK(mht_delta_v(7000, 7000).total() == 0.0);
}

TEST_CASE("published coplanar and plane-change costs") {
  const ThrusterSpec th;
  CHECK(mht_estimate(6950, 7000, 235, th).estimate.dv_total * 1e3 == doctest::Approx(27.09).epsilon(0.02));
  CHECK(nic_estimate(0.25 * kDegToRad, 7000, 235, th).estimate.dv_total * 1e3 ==
        doctest::Approx(32.71).epsilon(0.02));
  CHECK(nic_estimate(1.0 * kDegToRad, 7000, 235, th).estimate.dv_total * 1e3 ==
        doctest::Approx(132.72).epsilon(0.02));
}

TEST_CASE("plane change and rocket equation") {
  for (double di : {0.001, 0.01, 0.1})
    CHECK(nic_delta_v(di, 7000) == doctest::Approx(oracle::plane_change_dv(di, 7000)).epsilon(1e-12));
  CHECK(nic_delta_v(-0.01, 7000) == doctest::Approx(nic_delta_v(0.01, 7000)));
  CHECK(fuel_for_dv(235, 0.03, 277) == doctest::Approx(oracle::rocket_fuel(235, 0.03, 277)).epsilon(1e-12));
}

TEST_CASE("burn plans respect the thruster") {
  const ThrusterSpec th;
  for (const Maneuver& m : {mht_estimate(6950, 7000, 235, th), nic_estimate(0.5 * kDegToRad, 7000, 235, th)}) {
    REQUIRE(!m.plan.impulses.empty());
    double prev = -1.0, mass = 235.0;
    for (const ImpulseEvent& ev : m.plan.impulses) {
      CHECK(ev.epoch > prev);
      const double fuel = oracle::rocket_fuel(mass, ev.dv_lvlh.norm(), th.isp);
      CHECK(fuel <= th.fuel_per_burn() * (1 + 1e-9));
      mass -= fuel;
      prev = ev.epoch;
    }
    CHECK(m.plan.impulses.back().epoch <= m.estimate.tof_total);
    CHECK(m.plan.total_dv() == doctest::Approx(m.estimate.dv_total).epsilon(2e-3));
    REQUIRE(m.phases.size() == 1);
    CHECK(m.phases[0].last_impulse == static_cast<int>(m.plan.impulses.size()));
  }
}

TEST_CASE("burn count and duty cycle") {
  const ThrusterSpec th;
  const double fuel = 10 * th.fuel_per_burn() + 1e-6;
  CHECK(burn_count(fuel, th) == 11);
  CHECK(burn_count(0.0, th) == 0);
  const double T = orbit_scalars(7000).period;
  CHECK(burns_per_orbit(T, th, 2) == 2);
  CHECK(duty_cycle_tof(0, T, th, 2) == 0.0);
  CHECK(duty_cycle_tof(10, T, th, 2) > duty_cycle_tof(5, T, th, 2));
}

TEST_CASE("fuel availability is enforced") {
  EstimatorOptions opts;
  opts.available_fuel = 0.1;
  CHECK_THROWS_AS(nic_estimate(1.0 * kDegToRad, 7000, 235, ThrusterSpec{}, {}, opts), InsufficientFuel);
  CHECK_THROWS_AS(mht_estimate(6000, 7000, 235, ThrusterSpec{}), InvalidArgument);
}

TEST_CASE("sequential transfer records one phase per change") {
  const ThrusterSpec th;
  SpacecraftState s;
  s.mee = kep_to_mee({6950, 0, 97.2714 * kDegToRad, 0, 0, 0});
  s.mass = 235;
  KeplerianState target{7000, 0, 97.5214 * kDegToRad, 0, 0, 1.0};
  const Maneuver m = sequential_mht_nic(s, target, 0.0, th);
  REQUIRE(m.phases.size() == 2);
  CHECK(m.phases[0].kind == "mht");
  CHECK(m.phases[1].kind == "nic");
  CHECK(m.phases[1].start.epoch >= m.phases[0].start.epoch + m.phases[0].duration);
  CHECK(mee_sma(m.estimate.end_state.mee) == doctest::Approx(7000));
  CHECK(mee_inc(m.estimate.end_state.mee) == doctest::Approx(target.i));
  const double dv = oracle::hohmann_dv(6950, 7000) + oracle::plane_change_dv(0.25 * kDegToRad, 7000);
  CHECK(m.estimate.dv_total == doctest::Approx(dv).epsilon(1e-9));
  CHECK(m.estimate.fuel_mass > 0.0);
}

TEST_CASE("decommission lowers to the disposal radius") {
  SpacecraftState s;
  s.mee = kep_to_mee({7000, 0, 97.4 * kDegToRad, 0, 0, 0});
  s.mass = 150;
  const Maneuver m = decommission_estimate(s, 6628.137, ThrusterSpec{});
  CHECK(m.estimate.dv_total == doctest::Approx(oracle::hohmann_dv(7000, 6628.137)).epsilon(1e-12));
  CHECK(mee_sma(m.estimate.end_state.mee) == doctest::Approx(6628.137));
  for (const ImpulseEvent& ev : m.plan.impulses) CHECK(ev.dv_lvlh[1] < 0.0);
}

TEST_CASE("small impulses merge into their neighbours") {
  BurnPlan plan;
  for (int i = 0; i < 4; ++i) plan.impulses.push_back({100.0 * i, Eigen::Vector3d(0, 1e-7, 0), BurnLocation::Perigee});
  const double before = plan.total_dv();
  merge_small_impulses(plan, 200.0, 1.0);
  CHECK(plan.impulses.size() < 4);
  CHECK(plan.total_dv() == doctest::Approx(before));
}
