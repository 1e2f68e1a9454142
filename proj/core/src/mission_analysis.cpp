#include "orbitour/mission_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "orbitour/parallel.hpp"
#include "orbitour/random.hpp"

namespace orbitour {

double mean(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double stddev(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size()));
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

ScenarioRecord analyze_scenario(const MissionScenario& sc, const OptimizerConfig& optimizer, bool seed_with_walks,
                                const PhysicalConstants& consts) {
  ScenarioRecord r;
  r.seed = sc.seed;
  r.bundles = static_cast<int>(sc.bundles.size());
  std::vector<double> a, inc;
  double min_mass = std::numeric_limits<double>::infinity();
  for (const Bundle& b : sc.bundles) {
    a.push_back(b.target.a_km);
    inc.push_back(b.target.i_deg);
    min_mass = std::min(min_mass, b.mass());
  }
  r.min_payload_mass = sc.bundles.empty() ? 0.0 : min_mass;
  r.sma_std = stddev(a);
  r.inc_std = stddev(inc);
  if (!a.empty()) {
    r.sma_range = *std::max_element(a.begin(), a.end()) - *std::min_element(a.begin(), a.end());
    r.inc_range = *std::max_element(inc.begin(), inc.end()) - *std::min_element(inc.begin(), inc.end());
  }
  const std::vector<Permutation> seeds = seed_with_walks ? heuristic_walks(sc) : std::vector<Permutation>{};
  OptimizerConfig cfg = optimizer;
  cfg.jobs = 1;
  const OptimizeResult res = optimize(sc, cfg, seeds, consts);
  r.order = res.best.order;
  r.fuel = res.best.fuel_total;
  r.dv = res.best.dv_total;
  r.tof = res.best.tof_total;
  r.cost = res.best.cost;
  r.feasible = res.best.feasible;
  r.ok = true;
  return r;
}

MonteCarloSummary summarize(std::vector<ScenarioRecord> records) {
  MonteCarloSummary s;
  s.records = std::move(records);
  std::vector<double> fuel, nb, mm, sstd, srange, istd, irange;
  int feasible = 0;
  std::map<int, std::vector<const ScenarioRecord*>> groups;
  for (const ScenarioRecord& r : s.records) {
    if (!r.ok) continue;
    ++s.completed;
    fuel.push_back(r.fuel);
    nb.push_back(r.bundles);
    mm.push_back(r.min_payload_mass);
    sstd.push_back(r.sma_std);
    srange.push_back(r.sma_range);
    istd.push_back(r.inc_std);
    irange.push_back(r.inc_range);
    feasible += r.feasible ? 1 : 0;
    groups[r.bundles].push_back(&r);
  }
  s.fuel_mean = mean(fuel);
  s.fuel_std = stddev(fuel);
  s.feasible_fraction = s.completed ? static_cast<double>(feasible) / s.completed : 0.0;
  s.correlations = {{"bundles", pearson(nb, fuel)},         {"min_payload_mass", pearson(mm, fuel)},
                    {"sma_std", pearson(sstd, fuel)},       {"sma_range", pearson(srange, fuel)},
                    {"inc_std", pearson(istd, fuel)},       {"inc_range", pearson(irange, fuel)}};
  for (const auto& [n, rs] : groups) {
    BundleSummary b;
    b.bundles = n;
    b.count = static_cast<int>(rs.size());
    std::vector<double> f;
    int ok = 0;
    for (const ScenarioRecord* r : rs) {
      f.push_back(r->fuel);
      ok += r->feasible ? 1 : 0;
    }
    b.fuel_mean = mean(f);
    b.fuel_std = stddev(f);
    b.fuel_min = *std::min_element(f.begin(), f.end());
    b.fuel_max = *std::max_element(f.begin(), f.end());
    b.feasible_fraction = static_cast<double>(ok) / b.count;
    s.by_bundles.push_back(b);
  }
  return s;
}

MonteCarloSummary run_monte_carlo(const MonteCarloConfig& config, const PhysicalConstants& consts,
                                  const std::function<void(const ScenarioRecord&)>& on_done) {
  std::vector<ScenarioRecord> records(std::max(config.n, 0));
  std::mutex mu;
  parallel_for(config.n, config.jobs, [&](int i) {
    ScenarioRecord r;
    const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    try {
      const MissionScenario sc = sample_scenario(config.scenario, seed, consts);
      OptimizerConfig opt = config.optimizer;
      opt.seed = derive_seed(seed, 0x6f7074);
      r = analyze_scenario(sc, opt, config.seed_with_walks, consts);
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
    r.index = i;
    r.seed = seed;
    records[i] = r;
    if (on_done) {
      std::lock_guard<std::mutex> lock(mu);
      on_done(records[i]);
    }
  });
  return summarize(std::move(records));
}

}  // namespace orbitour
