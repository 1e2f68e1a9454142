#include "orbitour/tour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "orbitour/errors.hpp"
#include "orbitour/secular.hpp"

namespace orbitour {

namespace {

double penalized(double fuel, double budget, double factor) {
  return fuel <= budget ? fuel : budget + factor * (fuel - budget);
}

}  // namespace

Tour tour_cost(const MissionScenario& sc, const Permutation& order, const PhysicalConstants& consts,
               const TourOptions& opts) {
  if (order.size() != sc.bundles.size() || !is_permutation(order))
    throw InvalidArgument("tour order must be a permutation of the bundle indices");
  const ThrusterSpec& th = sc.spacecraft.thruster;
  EstimatorOptions eo;
  eo.build_burn_plan = opts.build_burn_plans;

  Tour tour;
  tour.order = order;
  SpacecraftState s = sc.initial_state();
  auto add_leg = [&](int bundle, const KeplerianState& target, double release, Maneuver&& m) {
    TourLeg leg;
    leg.bundle = bundle;
    leg.start = s;
    leg.target = target;
    leg.payload_release = release;
    tour.fuel_total += m.estimate.fuel_mass;
    tour.dv_total += m.estimate.dv_total;
    tour.tof_total += m.estimate.tof_total;
    s = m.estimate.end_state;
    leg.estimate = std::move(m.estimate);
    leg.plan = std::move(m.plan);
    leg.phases = std::move(m.phases);
    tour.legs.push_back(std::move(leg));
  };

  try {
    for (int b : order) {
      const Bundle& bundle = sc.bundles[b];
      // Targets drift secularly from the scenario epoch to the start of their leg.
      const KeplerianState target = propagate_secular(bundle.target.to_kep(), s.epoch - sc.epoch0, consts);
      add_leg(b, target, bundle.mass(), sequential_mht_nic(s, target, bundle.mass(), th, consts, eo));
    }
    if (opts.end == EndCondition::Decommission) {
      KeplerianState d;
      d.a = sc.decommission_radius(consts);
      d.i = mee_inc(s.mee);
      add_leg(-1, d, 0.0, decommission_estimate(s, d.a, th, consts, eo));
    } else if (opts.end == EndCondition::ReturnToInsertion) {
      const KeplerianState home = propagate_secular(sc.insertion.to_kep(), s.epoch - sc.epoch0, consts);
      add_leg(-1, home, 0.0, sequential_mht_nic(s, home, 0.0, th, consts, eo));
    }
    tour.feasible = tour.fuel_total <= sc.spacecraft.fuel_mass;
    tour.cost = penalized(tour.fuel_total, sc.spacecraft.fuel_mass, opts.penalty_factor);
  } catch (const InsufficientFuel&) {
    tour.feasible = false;
    tour.cost = std::numeric_limits<double>::max();
  }
  return tour;
}

double tour_fuel_cost(const MissionScenario& sc, const Permutation& order, const PhysicalConstants& consts,
                      const TourOptions& opts) {
  // Fuel depends only on the (a, i) path and the mass history.
  const ThrusterSpec& th = sc.spacecraft.thruster;
  const double ve = th.exhaust_velocity(consts);
  double a = sc.insertion.a_km;
  double inc = sc.insertion.i_deg * kDegToRad;
  double m = sc.initial_mass();
  double fuel = 0.0;
  auto burn = [&](double dv) {
    const double f = m * (1.0 - std::exp(-dv / ve));
    fuel += f;
    m -= f;
  };
  auto mht = [&](double r1) {
    if (std::abs(r1 - a) < 1e-9) return;
    const HohmannLegs l = mht_delta_v(a, r1, consts);
    burn(l.departure);
    burn(l.circularization);
    a = r1;
  };
  auto nic = [&](double i1) {
    if (std::abs(i1 - inc) < 1e-12) return;
    burn(nic_delta_v(i1 - inc, a, consts));
    inc = i1;
  };
  auto transfer = [&](double r1, double i1) {
    if (r1 > a) {
      mht(r1);
      nic(i1);
    } else {
      nic(i1);
      mht(r1);
    }
  };
  for (int b : order) {
    const Bundle& bundle = sc.bundles[b];
    transfer(bundle.target.a_km, bundle.target.i_deg * kDegToRad);
    m -= bundle.mass();
    if (m <= 0.0) return std::numeric_limits<double>::max();
  }
  if (opts.end == EndCondition::Decommission) {
    mht(sc.decommission_radius(consts));
  } else if (opts.end == EndCondition::ReturnToInsertion) {
    transfer(sc.insertion.a_km, sc.insertion.i_deg * kDegToRad);
  }
  if (m <= 0.0) return std::numeric_limits<double>::max();
  return penalized(fuel, sc.spacecraft.fuel_mass, opts.penalty_factor);
}

std::vector<Permutation> heuristic_walks(const MissionScenario& sc) {
  const int n = static_cast<int>(sc.bundles.size());
  auto walk = [&](auto key, bool ascending) {
    Permutation p = identity_permutation(n);
    std::stable_sort(p.begin(), p.end(), [&](int x, int y) {
      return ascending ? key(x) < key(y) : key(x) > key(y);
    });
    return p;
  };
  auto inc = [&](int b) { return sc.bundles[b].target.i_deg; };
  auto mass = [&](int b) { return sc.bundles[b].mass(); };
  return {walk(inc, true), walk(inc, false), walk(mass, true), walk(mass, false)};
}

Tour brute_force(const MissionScenario& sc, int max_n, const PhysicalConstants& consts, const TourOptions& opts) {
  const int n = static_cast<int>(sc.bundles.size());
  if (n > max_n) throw InvalidArgument("brute_force: too many bundles");
  if (n < 1) throw InvalidArgument("brute_force: no bundles");
  Permutation p = identity_permutation(n);
  Permutation best = p;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    const double c = tour_fuel_cost(sc, p, consts, opts);
    if (c < best_cost) {
      best_cost = c;
      best = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return tour_cost(sc, best, consts, opts);
}

}  // namespace orbitour
