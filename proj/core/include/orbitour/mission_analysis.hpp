#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orbitour/optimizer.hpp"
#include "orbitour/scenario.hpp"

namespace orbitour {

struct MonteCarloConfig {
  ScenarioConfig scenario;
  OptimizerConfig optimizer;
  int n = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool seed_with_walks = true;  // hand the heuristic walks to the optimizer
};

// One optimized scenario plus the covariates the cost is correlated against.
struct ScenarioRecord {
  int index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  int bundles = 0;
  Permutation order;
  double fuel = 0.0;  // kg
  double dv = 0.0;    // km/s
  double tof = 0.0;   // s
  double cost = 0.0;
  bool feasible = false;
  double min_payload_mass = 0.0;  // kg, lightest bundle
  double sma_std = 0.0;           // km, over bundle targets
  double sma_range = 0.0;
  double inc_std = 0.0;           // deg
  double inc_range = 0.0;
};

struct BundleSummary {
  int bundles = 0;
  int count = 0;
  double fuel_mean = 0.0;
  double fuel_std = 0.0;
  double fuel_min = 0.0;
  double fuel_max = 0.0;
  double feasible_fraction = 0.0;
};

struct Correlation {
  std::string covariate;
  double pearson = 0.0;
};

struct MonteCarloSummary {
  std::vector<ScenarioRecord> records;
  std::vector<BundleSummary> by_bundles;
  std::vector<Correlation> correlations;  // each covariate against fuel
  int completed = 0;
  double fuel_mean = 0.0;
  double fuel_std = 0.0;
  double feasible_fraction = 0.0;
};

// Population statistics.
double mean(const std::vector<double>& x);
double stddev(const std::vector<double>& x);
double pearson(const std::vector<double>& x, const std::vector<double>& y);

ScenarioRecord analyze_scenario(const MissionScenario& scenario, const OptimizerConfig& optimizer,
                                bool seed_with_walks, const PhysicalConstants& consts = {});

MonteCarloSummary summarize(std::vector<ScenarioRecord> records);

// Scenario i uses seed derive_seed(config.seed, i); results are ordered by index and do
// not depend on `jobs`. Failures are recorded, not thrown.
MonteCarloSummary run_monte_carlo(const MonteCarloConfig& config, const PhysicalConstants& consts = {},
                                  const std::function<void(const ScenarioRecord&)>& on_done = {});

}  // namespace orbitour
