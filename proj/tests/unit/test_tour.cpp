#include <algorithm>
#include <chrono>
#include <cmath>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "orbitour/errors.hpp"
#include "orbitour/optimizer.hpp"
#include "orbitour/tour.hpp"

using namespace orbitour;

namespace {

// Leg-by-leg rocket-equation chain: raise before a plane change, lower after it.
double oracle_fuel(const MissionScenario& sc, const Permutation& order) {
  double a = sc.insertion.a_km, inc = sc.insertion.i_deg * kDegToRad, m = sc.initial_mass(), fuel = 0.0;
  const double isp = sc.spacecraft.thruster.isp;
  auto burn = [&](double dv) {
    const double f = oracle::rocket_fuel(m, dv, isp);
    fuel += f;
    m -= f;
  };
  auto hohmann = [&](double r1) {
    if (r1 == a) return;
    const double at = 0.5 * (a + r1);
    burn(std::abs(std::sqrt(oracle::kMu * (2 / a - 1 / at)) - std::sqrt(oracle::kMu / a)));
    burn(std::abs(std::sqrt(oracle::kMu / r1) - std::sqrt(oracle::kMu * (2 / r1 - 1 / at))));
    a = r1;
  };
  auto plane = [&](double i1) {
    if (i1 == inc) return;
    burn(oracle::plane_change_dv(i1 - inc, a));
    inc = i1;
  };
  for (int b : order) {
    const Bundle& t = sc.bundles[b];
    if (t.target.a_km > a) {
      hohmann(t.target.a_km);
      plane(t.target.i_deg * kDegToRad);
    } else {
      plane(t.target.i_deg * kDegToRad);
      hohmann(t.target.a_km);
    }
    m -= t.mass();
  }
  hohmann(oracle::kRe + sc.decommission_alt_km);
  return fuel;
}

MissionScenario single_bundle_at_insertion() {
  MissionScenario sc;
  sc.insertion = {6878.137, 0, 97.4, 158, 0, 0};
  Bundle b;
  b.target = sc.insertion;
  b.payloads = {{PayloadClass::CubeSat, 4.0}};
  sc.bundles = {b};
  return sc;
}

}  // namespace

TEST_CASE("zero transfer leg") {
  const MissionScenario sc = single_bundle_at_insertion();
  const Tour t = tour_cost(sc, {0});
  REQUIRE(t.legs.size() == 2);
  CHECK(t.legs[0].estimate.dv_total == 0.0);
  CHECK(t.legs[0].estimate.fuel_mass == 0.0);
  CHECK(t.fuel_total == doctest::Approx(t.legs[1].estimate.fuel_mass));
  CHECK(t.feasible);
  CHECK(brute_force(sc).order == Permutation{0});
}

TEST_CASE("identical targets cost the same in either order") {
  MissionScenario sc = single_bundle_at_insertion();
  sc.bundles[0].target.a_km += 20;
  sc.bundles.push_back(sc.bundles[0]);
  CHECK(tour_fuel_cost(sc, {0, 1}, {}, {}) == doctest::Approx(tour_fuel_cost(sc, {1, 0}, {}, {})).epsilon(1e-14));
}

TEST_CASE("tour fuel equals the leg-by-leg oracle") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 13;
  Rng rng(21);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const MissionScenario sc = sample_scenario(cfg, s);
    Permutation p = identity_permutation(13);
    for (int i = 12; i > 0; --i) std::swap(p[i], p[rng.uniform_int(0, i)]);
    const double ref = oracle_fuel(sc, p);
    CHECK(tour_cost(sc, p).fuel_total == doctest::Approx(ref).epsilon(1e-9));
    if (ref <= sc.spacecraft.fuel_mass) CHECK(tour_fuel_cost(sc, p, {}, {}) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("infeasible tours carry a penalty") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 13;
  MissionScenario sc = sample_scenario(cfg, 4);
  sc.spacecraft.fuel_mass = 1.0;
  sc.spacecraft.wet_mass -= 34.0;
  const Tour t = tour_cost(sc, identity_permutation(13));
  CHECK_FALSE(t.feasible);
  CHECK(t.cost > t.fuel_total);
  CHECK(t.cost == doctest::Approx(1.0 + 10.0 * (t.fuel_total - 1.0)));
}

TEST_CASE("phasing legs are timed and ordered") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 5;
  const MissionScenario sc = sample_scenario(cfg, 2);
  TourOptions opts;
  opts.build_burn_plans = true;
  const Tour t = tour_cost(sc, identity_permutation(5), {}, opts);
  REQUIRE(t.legs.size() == 6);
  double epoch = 0.0, tof = 0.0;
  for (const TourLeg& leg : t.legs) {
    CHECK(leg.start.epoch == doctest::Approx(epoch));
    CHECK(leg.estimate.phasing_coast >= 0.0);
    epoch += leg.estimate.tof_total;
    tof += leg.estimate.tof_total;
    for (const ImpulseEvent& ev : leg.plan.impulses) CHECK(ev.epoch >= leg.start.epoch);
  }
  CHECK(t.tof_total == doctest::Approx(tof));
  CHECK(t.legs.back().bundle == -1);
}

TEST_CASE("heuristic walks") {
  MissionScenario sc = single_bundle_at_insertion();
  for (int k = 0; k < 4; ++k) sc.bundles.push_back(sc.bundles[0]);
  for (const Permutation& p : heuristic_walks(sc)) CHECK(p == identity_permutation(5));
  for (int k = 0; k < 5; ++k) {
    sc.bundles[k].target.i_deg = 97.0 + 0.1 * k;
    sc.bundles[k].payloads[0].mass = 1.0 + k * (k % 2 ? 0.3 : 1.7);
  }
  const auto w = heuristic_walks(sc);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == identity_permutation(5));
  Permutation rev = w[2];
  std::reverse(rev.begin(), rev.end());
  CHECK(w[3] == rev);
}

TEST_CASE("brute force enumerates every order") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 3;
  const MissionScenario sc = sample_scenario(cfg, 9);
  double best = 1e300;
  Permutation p = identity_permutation(3);
  do best = std::min(best, tour_fuel_cost(sc, p, {}, {}));
  while (std::next_permutation(p.begin(), p.end()));
  CHECK(tour_fuel_cost(sc, brute_force(sc).order, {}, {}) == best);
  cfg.fixed_bundles = 10;
  CHECK_THROWS_AS(brute_force(sample_scenario(cfg, 1)), InvalidArgument);
}

TEST_CASE("optimizer on small problems") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 2;
  const MissionScenario two = sample_scenario(cfg, 3);
  OptimizerConfig oc;
  oc.generations = 1;
  const OptimizeResult r = optimize(two, oc);
  CHECK(tour_fuel_cost(two, r.best.order, {}, {}) == tour_fuel_cost(two, brute_force(two).order, {}, {}));

  cfg.fixed_bundles = 8;
  const MissionScenario eight = sample_scenario(cfg, 3);
  const auto t0 = std::chrono::steady_clock::now();
  const Tour bf = brute_force(eight);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 10.0);
  const double opt = tour_fuel_cost(eight, bf.order, {}, {});
  for (const Permutation& w : heuristic_walks(eight)) CHECK(opt <= tour_fuel_cost(eight, w, {}, {}));
}

TEST_CASE("seeded optimization never loses its best seed") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 13;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const MissionScenario sc = sample_scenario(cfg, 100 + s);
    const auto walks = heuristic_walks(sc);
    double best_walk = 1e300;
    for (const Permutation& w : walks) best_walk = std::min(best_walk, tour_fuel_cost(sc, w, {}, {}));
    OptimizerConfig oc;
    oc.generations = 5;
    oc.seed = s;
    const OptimizeResult r = optimize(sc, oc, walks);
    CHECK(tour_fuel_cost(sc, r.best.order, {}, {}) <= best_walk);
  }
}

TEST_CASE("optimizer is deterministic and records its trace") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 9;
  const MissionScenario sc = sample_scenario(cfg, 8);
  OptimizerConfig oc;
  oc.generations = 30;
  oc.seed = 5;
  const OptimizeResult a = optimize(sc, oc);
  oc.jobs = 4;
  const OptimizeResult b = optimize(sc, oc);
  CHECK(a.best.order == b.best.order);
  REQUIRE(a.trace.records.size() == b.trace.records.size());
  CHECK(a.trace.records.size() == static_cast<std::size_t>(oc.generations * oc.islands));
  for (std::size_t k = 0; k < a.trace.records.size(); ++k) {
    CHECK(a.trace.records[k].best == b.trace.records[k].best);
    CHECK(a.trace.records[k].mean >= a.trace.records[k].best);
  }
  CHECK(!a.trace.migrations.empty());
}
