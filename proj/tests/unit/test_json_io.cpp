#include <cstdio>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "orbitour/errors.hpp"
#include "orbitour/json_io.hpp"

using namespace orbitour;

namespace {

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

RefinedTour synthetic_refined() {
  RefinedTour rt;
  RefinedLeg leg;
  leg.leg = 1;
  leg.bundle = 4;
  leg.kind = "nic";
  leg.target_a = 6900.125;
  leg.target_i = 1.7;
  leg.dv_estimate = 0.0123456789;
  leg.fuel_estimate = 1.25;
  RefinedArc& a = leg.arc;
  a.t0 = 12345.678;
  a.isp = 277;
  a.durations = {10.0, 2.5, 1 / 3.0};
  a.tmax = {0.0, 0.0126, 0.0126};
  for (int k = 0; k < 4; ++k) {
    StateVec x;
    x << 6900 + k / 7.0, 1e-4, -2e-4, 0.3, 0.2, 0.1 * k, 230 - 1e-3 * k;
    a.states.push_back(x);
  }
  a.controls = {Eigen::Vector3d::Zero(), Eigen::Vector3d(1e-3, 0.0125, -1e-17), Eigen::Vector3d(0, 0, 0.0126)};
  a.dv_total = 0.01234;
  a.fuel = 1.2;
  a.iterations = 7;
  a.converged = true;
  a.objective = 3.5e-9;
  a.warnings = {"window clipped"};
  leg.errors = {0.5, 1e-5, -0.002};
  rt.arcs.push_back(leg);
  rt.dv_total = a.dv_total;
  rt.fuel_total = a.fuel;
  rt.dv_estimate = leg.dv_estimate;
  rt.fuel_estimate = leg.fuel_estimate;
  return rt;
}

}  // namespace

TEST_CASE("constants override") {
  PhysicalConstants c;
  c.j2 = 0.0;
  const PhysicalConstants back = constants_from_json(constants_to_json(c));
  CHECK(back.j2 == 0.0);
  CHECK(back.mu == c.mu);
  const PhysicalConstants partial = constants_from_json(R"({"re_km": 6371.0})");
  CHECK(partial.re == 6371.0);
  CHECK(partial.mu == PhysicalConstants{}.mu);
  CHECK_THROWS_AS(constants_from_json(R"({"mu": 1})"), SchemaError);
  CHECK_THROWS_AS(constants_from_json(R"({"mu_km3_s2": -1})"), SchemaError);
}

TEST_CASE("configuration round trips") {
  ScenarioConfig sc;
  sc.fixed_bundles = 13;
  sc.inventory.cubesats = 5;
  const ScenarioConfig sb = scenario_config_from_json(scenario_config_to_json(sc));
  CHECK(sb.fixed_bundles == 13);
  CHECK(sb.inventory.cubesats == 5);
  CHECK(!sb.max_bundles.has_value());
  CHECK(scenario_config_to_json(sb) == scenario_config_to_json(sc));

  OptimizerConfig oc;
  oc.islands = 3;
  oc.algorithms = {IslandAlgorithm::ParticleSwarm, IslandAlgorithm::Genetic};
  oc.tour.end = EndCondition::ReturnToInsertion;
  oc.genetic.mutation_rate = 0.2;
  const OptimizerConfig ob = optimizer_config_from_json(optimizer_config_to_json(oc));
  CHECK(ob.islands == 3);
  CHECK(ob.algorithms.size() == 2);
  CHECK(ob.tour.end == EndCondition::ReturnToInsertion);
  CHECK(ob.genetic.mutation_rate == 0.2);
  CHECK(optimizer_config_to_json(ob) == optimizer_config_to_json(oc));
  CHECK_THROWS_AS(optimizer_config_from_json(R"({"islands": 0})"), SchemaError);
  CHECK_THROWS_AS(optimizer_config_from_json(R"({"algorithms": ["annealing"]})"), SchemaError);
  CHECK_THROWS_AS(scenario_config_from_json(R"({"inventory": {"cubesat": 3}})"), SchemaError);
}

TEST_CASE("tour JSON carries order and end condition") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 4;
  const MissionScenario sc = sample_scenario(cfg, 3);
  TourOptions opts;
  opts.end = EndCondition::None;
  const Tour t = tour_cost(sc, {3, 1, 0, 2}, {}, opts);
  const std::string text = tour_to_json(t, opts);
  CHECK(tour_order_from_json(text) == Permutation{3, 1, 0, 2});
  CHECK(tour_options_from_json(text).end == EndCondition::None);
  CHECK_THROWS_AS(tour_order_from_json(R"({"order": [0, 0]})"), SchemaError);
}

TEST_CASE("refined arcs round trip exactly") {
  const RefinedTour rt = synthetic_refined();
  const std::string text = refined_tour_to_json(rt);
  const RefinedTour back = refined_tour_from_json(text);
  REQUIRE(back.arcs.size() == 1);
  const RefinedArc& a = back.arcs[0].arc;
  const RefinedArc& b = rt.arcs[0].arc;
  CHECK(a.durations == b.durations);
  CHECK(a.tmax == b.tmax);
  for (std::size_t k = 0; k < a.states.size(); ++k) CHECK(a.states[k] == b.states[k]);
  for (std::size_t k = 0; k < a.controls.size(); ++k) CHECK(a.controls[k] == b.controls[k]);
  CHECK(back.arcs[0].target_i == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(back.arcs[0].dv_estimate == doctest::Approx(0.0123456789).epsilon(1e-15));
  CHECK(a.warnings == b.warnings);
  CHECK(refined_tour_to_json(back) == text);
  CHECK_THROWS_AS(refined_tour_from_json(R"({"arcs": [{"leg": 0}]})"), SchemaError);
}

TEST_CASE("report tables") {
  VerificationReport rep;
  ArcVerification v;
  v.kind = "mht";
  v.pass = v.pass_a = v.pass_i = true;
  rep.arcs = {v, v};
  const std::string csv = report_to_csv(rep);
  CHECK(count_lines(csv) == 3);
  CHECK(csv.rfind("leg,bundle,kind,target_a_km", 0) == 0);
  CHECK(report_to_json(rep).find("\"all_pass\": true") != std::string::npos);

  MonteCarloSummary s = summarize({});
  CHECK(count_lines(monte_carlo_to_csv(s)) == 1);
  CHECK(count_lines(bundle_summary_to_csv(s)) == 1);
}

TEST_CASE("file helpers") {
  const std::string path = (std::filesystem::temp_directory_path() / "orbitour_io_test.txt").string();
  write_text_file(path, "abc\n");
  CHECK(read_text_file(path) == "abc\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file(path), Error);
}
