#include <cmath>

#include "doctest.h"
#include "orbitour/maneuvers.hpp"
#include "orbitour/refine.hpp"
#include "orbitour/verify.hpp"

using namespace orbitour;

namespace {

RefinedTour small_refined_tour() {
  static const RefinedTour rt = [] {
    MissionScenario sc;
    sc.insertion = {6878.137, 0, 97.4, 158, 0, 0};
    Bundle b;
    b.target = {6908.137, 0, 97.45, 158, 0, 90};
    b.payloads = {{PayloadClass::CubeSat, 4.0}};
    sc.bundles = {b};
    RefineOptions opts;
    opts.tour.end = EndCondition::None;
    const Tour t = tour_cost(sc, {0}, {}, opts.tour);
    return refine_tour(t, sc, opts);
  }();
  return rt;
}

}  // namespace

TEST_CASE("refined arcs pass re-propagation") {
  const RefinedTour rt = small_refined_tour();
  REQUIRE(rt.arcs.size() == 2);
  CHECK(rt.all_converged);
  const VerificationReport rep = verify_trajectory(rt);
  REQUIRE(rep.arcs.size() == 2);
  CHECK(rep.all_pass);
  CHECK(rep.all_fuel_pass);
  for (const ArcVerification& v : rep.arcs) {
    CHECK(v.pass_a);
    CHECK(v.pass_i);
    CHECK(std::abs(v.fuel_numeric - v.fuel_analytic) <= 0.05 * v.fuel_analytic);
    CHECK(v.consistency < 1e-6);
    CHECK(v.target_i > 90.0);  // degrees in reports
  }
  CHECK(rep.fuel_total == doctest::Approx(rep.arcs[0].fuel_numeric + rep.arcs[1].fuel_numeric));
}

TEST_CASE("degraded controls are caught") {
  RefinedTour rt = small_refined_tour();
  RefinedLeg& leg = rt.arcs[0];
  REQUIRE(leg.kind == "mht");
  for (auto& u : leg.arc.controls) u *= 0.3;
  const ArcVerification v = verify_arc(leg.arc, leg.target_a, leg.target_i, leg.fuel_estimate);
  CHECK_FALSE(v.pass_a);
  CHECK_FALSE(v.pass);
  CHECK_FALSE(v.pass_fuel);
  CHECK(v.consistency > 1e-6);
}

TEST_CASE("tolerances are configurable") {
  const RefinedTour rt = small_refined_tour();
  Tolerances tight;
  tight.da_km = 1e-9;
  const VerificationReport rep = verify_trajectory(rt, tight);
  CHECK_FALSE(rep.all_pass);
}
