#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "orbitour/errors.hpp"
#include "orbitour/json_io.hpp"
#include "orbitour/scenario.hpp"

using namespace orbitour;

TEST_CASE("SSO inclination examples") {
  CHECK(sso_inclination(6378.137 + 500) * kRadToDeg == doctest::Approx(97.40).epsilon(0.5 / 97.4));
  CHECK(sso_inclination(7000) * kRadToDeg == doctest::Approx(97.3964).epsilon(0.5 / 97.4));
  for (double a = 6700; a < 7500; a += 50) CHECK(sso_inclination(a + 100) > sso_inclination(a));
}

TEST_CASE("default configuration carries the 13-payload manifest") {
  const ScenarioConfig cfg;
  CHECK(cfg.inventory.total() == 13);
  CHECK(cfg.inventory.pocketqubes == 4);
  CHECK(cfg.inventory.cubesats == 8);
  CHECK(cfg.inventory.smallsats == 1);
  const MissionScenario sc = sample_scenario(cfg, 1);
  std::size_t payloads = 0;
  for (const Bundle& b : sc.bundles) {
    CHECK(!b.payloads.empty());
    payloads += b.payloads.size();
  }
  CHECK(payloads == 13);
  CHECK(sc.initial_mass() == doctest::Approx(sc.spacecraft.dry_mass() + sc.spacecraft.fuel_mass + sc.payload_mass()));
}

TEST_CASE("sampled scenarios follow the statistical model") {
  ScenarioConfig cfg;
  std::vector<double> sma;
  // Inclinations are drawn over the sun-synchronous band of the altitude range.
  const double i_lo = sso_inclination(6378.137 + 450) * kRadToDeg, i_hi = sso_inclination(6378.137 + 550) * kRadToDeg;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const MissionScenario sc = sample_scenario(cfg, s);
    CHECK(sc.bundles.size() >= 2);
    CHECK(sc.bundles.size() <= 13);
    for (const Bundle& b : sc.bundles) {
      sma.push_back(b.target.a_km - 6378.137 - cfg.nominal_alt_km);
      CHECK(b.target.i_deg >= i_lo);
      CHECK(b.target.i_deg <= i_hi);
      for (const PayloadSpec& p : b.payloads) CHECK(p.mass >= nominal_payload_mass(p.cls));
    }
  }
  // Kolmogorov-Smirnov against U(-50, 50).
  std::sort(sma.begin(), sma.end());
  CHECK(sma.front() >= -50.0);
  CHECK(sma.back() <= 50.0);
  double d = 0.0;
  const double n = static_cast<double>(sma.size());
  for (std::size_t k = 0; k < sma.size(); ++k) {
    const double F = (sma[k] + 50.0) / 100.0;
    d = std::max({d, std::abs(F - k / n), std::abs(F - (k + 1) / n)});
  }
  CHECK(d < 1.63 / std::sqrt(n));  // 99% critical value
}

TEST_CASE("fixed bundle count and reproducibility") {
  ScenarioConfig cfg;
  cfg.fixed_bundles = 13;
  const MissionScenario a = sample_scenario(cfg, 77), b = sample_scenario(cfg, 77);
  CHECK(a.bundles.size() == 13);
  CHECK(scenario_to_json(a) == scenario_to_json(b));
  CHECK(scenario_to_json(a) != scenario_to_json(sample_scenario(cfg, 78)));
  cfg.fixed_bundles = 14;
  CHECK_THROWS_AS(sample_scenario(cfg, 1), InvalidArgument);
}

TEST_CASE("scenario JSON round trip and validation") {
  const MissionScenario sc = sample_scenario(ScenarioConfig{}, 5);
  const MissionScenario back = scenario_from_json(scenario_to_json(sc));
  CHECK(back == sc);
  CHECK_THROWS_AS(scenario_from_json(R"({"version": 99, "insertion": {}, "bundles": []})"), SchemaError);
  CHECK_THROWS_AS(scenario_from_json("{not json"), SchemaError);
  const MissionScenario minimal = scenario_from_json(R"({
    "insertion": {"a_km": 6878.137, "i_deg": 97.4},
    "bundles": [{"target": {"a_km": 6878.137, "i_deg": 97.4}, "payloads": [{"class": "cubesat", "mass_kg": 4}]}]
  })");
  CHECK(minimal.bundles.size() == 1);
  CHECK(minimal.spacecraft.fuel_mass == 35.0);
}
