#include "orbitour/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "orbitour/errors.hpp"
#include "orbitour/sobol.hpp"

namespace orbitour {

namespace {

constexpr double kKeyMax = 1.0 - 0x1.0p-40;

double clamp_key(double x) { return std::clamp(x, 0.0, kKeyMax); }

struct Individual {
  RandomKeyVector keys;
  RandomKeyVector velocity;
  RandomKeyVector best_keys;
  double cost = std::numeric_limits<double>::infinity();
  double best_cost = std::numeric_limits<double>::infinity();
};

class Island {
 public:
  Island(int index, IslandAlgorithm algo, const MissionScenario& sc, const OptimizerConfig& cfg,
         const PhysicalConstants& consts, const std::vector<Permutation>& seeds)
      : index_(index), algo_(algo), sc_(sc), cfg_(cfg), consts_(consts),
        n_(static_cast<int>(sc.bundles.size())), rng_(derive_seed(cfg.seed, 2 * index + 1)) {
    const int pop = cfg.population;
    pop_.resize(pop);
    int slot = 0;
    if (!seeds.empty()) {
      const int seeded = std::min(pop, static_cast<int>(std::lround(cfg.seeding_fraction * pop)));
      // Candidates verbatim first, then Mallows draws around them in turn.
      std::vector<MallowsSampler> samplers;
      for (std::size_t s = 0; s < seeds.size(); ++s)
        samplers.emplace_back(MallowsParams{seeds[s], cfg.mallows_theta},
                              derive_seed(cfg.seed, 1000003ULL * (index + 1) + s));
      for (; slot < seeded; ++slot) {
        const std::size_t s = static_cast<std::size_t>(slot) % seeds.size();
        const Permutation p = slot < static_cast<int>(seeds.size()) ? seeds[s] : samplers[s].next();
        pop_[slot].keys = encode(p, rng_);
      }
    }
    if (slot < pop) {
      SobolEngine sobol(n_, derive_seed(cfg.seed, 2 * index + 2));
      for (; slot < pop; ++slot) sobol.next(pop_[slot].keys);
    }
    for (auto& ind : pop_) {
      ind.velocity.assign(n_, 0.0);
      for (auto& v : ind.velocity) v = cfg.swarm.max_velocity * (2.0 * rng_.uniform() - 1.0) * 0.5;
      evaluate(ind);
      ind.best_keys = ind.keys;
      ind.best_cost = ind.cost;
    }
    update_best();
  }

  void evolve(int generations, int first_generation, std::vector<GenerationRecord>& records) {
    for (int g = 0; g < generations; ++g) {
      if (algo_ == IslandAlgorithm::Genetic) {
        step_genetic();
      } else {
        step_swarm();
      }
      update_best();
      records.push_back({first_generation + g, index_, best_cost_, mean_cost()});
    }
  }

  double best_cost() const { return best_cost_; }
  const RandomKeyVector& best_keys() const { return best_keys_; }
  long evaluations() const { return evaluations_; }

  // Replaces the worst member with an immigrant.
  void receive(const RandomKeyVector& keys, double cost) {
    auto worst = std::max_element(pop_.begin(), pop_.end(), [&](const Individual& a, const Individual& b) {
      return member_cost(a) < member_cost(b);
    });
    worst->keys = keys;
    worst->cost = cost;
    worst->best_keys = keys;
    worst->best_cost = cost;
    std::fill(worst->velocity.begin(), worst->velocity.end(), 0.0);
    update_best();
  }

 private:
  int index_;
  IslandAlgorithm algo_;
  const MissionScenario& sc_;
  const OptimizerConfig& cfg_;
  const PhysicalConstants& consts_;
  int n_;
  Rng rng_;
  std::vector<Individual> pop_;
  RandomKeyVector best_keys_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  long evaluations_ = 0;

  double member_cost(const Individual& ind) const {
    return algo_ == IslandAlgorithm::Genetic ? ind.cost : ind.best_cost;
  }

  void evaluate(Individual& ind) {
    ind.cost = tour_fuel_cost(sc_, decode(ind.keys), consts_, cfg_.tour);
    ++evaluations_;
  }

  void update_best() {
    for (const auto& ind : pop_) {
      const double c = std::min(ind.cost, ind.best_cost);
      if (c < best_cost_) {
        best_cost_ = c;
        best_keys_ = ind.cost <= ind.best_cost ? ind.keys : ind.best_keys;
      }
    }
  }

  double mean_cost() const {
    double s = 0.0;
    for (const auto& ind : pop_) s += ind.cost;
    return s / pop_.size();
  }

  const Individual& tournament() {
    const Individual* best = nullptr;
    for (int t = 0; t < cfg_.genetic.tournament; ++t) {
      const Individual& c = pop_[rng_.below(pop_.size())];
      if (!best || c.cost < best->cost) best = &c;
    }
    return *best;
  }

  void step_genetic() {
    const GeneticParams& gp = cfg_.genetic;
    const double pm = gp.mutation_rate.value_or(1.0 / n_);
    std::vector<int> idx(pop_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return pop_[a].cost < pop_[b].cost; });
    std::vector<Individual> next;
    next.reserve(pop_.size());
    const int elites = std::min<int>(gp.elites, static_cast<int>(pop_.size()));
    for (int e = 0; e < elites; ++e) next.push_back(pop_[idx[e]]);
    while (next.size() < pop_.size()) {
      const Individual& a = tournament();
      const Individual& b = tournament();
      Individual child;
      child.keys = a.keys;
      if (rng_.uniform() < gp.crossover_rate) {
        for (int j = 0; j < n_; ++j) {
          const double lo = std::min(a.keys[j], b.keys[j]);
          const double hi = std::max(a.keys[j], b.keys[j]);
          const double span = hi - lo;
          child.keys[j] = clamp_key(rng_.uniform(lo - gp.blend_alpha * span, hi + gp.blend_alpha * span));
        }
      }
      for (int j = 0; j < n_; ++j)
        if (rng_.uniform() < pm) child.keys[j] = clamp_key(child.keys[j] + gp.mutation_sigma * rng_.normal());
      child.velocity.assign(n_, 0.0);
      evaluate(child);
      child.best_keys = child.keys;
      child.best_cost = child.cost;
      next.push_back(std::move(child));
    }
    pop_ = std::move(next);
  }

  void step_swarm() {
    const SwarmParams& sp = cfg_.swarm;
    const RandomKeyVector gbest = best_keys_;
    for (auto& ind : pop_) {
      for (int j = 0; j < n_; ++j) {
        double v = sp.inertia * ind.velocity[j] + sp.cognitive * rng_.uniform() * (ind.best_keys[j] - ind.keys[j]) +
                   sp.social * rng_.uniform() * (gbest[j] - ind.keys[j]);
        v = std::clamp(v, -sp.max_velocity, sp.max_velocity);
        ind.velocity[j] = v;
        ind.keys[j] = clamp_key(ind.keys[j] + v);
      }
      evaluate(ind);
      if (ind.cost < ind.best_cost) {
        ind.best_cost = ind.cost;
        ind.best_keys = ind.keys;
      }
    }
  }
};

}  // namespace

OptimizeResult optimize(const MissionScenario& scenario, const OptimizerConfig& cfg,
                        const std::vector<Permutation>& seeds, const PhysicalConstants& consts) {
  const int n = static_cast<int>(scenario.bundles.size());
  if (n < 1) throw InvalidArgument("optimize: scenario has no bundles");
  if (cfg.islands < 1 || cfg.population < 2 || cfg.generations < 0 || cfg.migration_interval < 1 ||
      cfg.migrants < 0 || cfg.seeding_fraction < 0.0 || cfg.seeding_fraction > 1.0 || cfg.mallows_theta < 0.0)
    throw InvalidArgument("invalid optimizer configuration");
  for (const auto& s : seeds)
    if (static_cast<int>(s.size()) != n || !is_permutation(s)) throw InvalidArgument("seed tour is not a valid order");

  std::vector<Island> islands;
  islands.reserve(cfg.islands);
  for (int k = 0; k < cfg.islands; ++k) {
    IslandAlgorithm algo = k % 2 == 0 ? IslandAlgorithm::Genetic : IslandAlgorithm::ParticleSwarm;
    if (!cfg.algorithms.empty()) algo = cfg.algorithms[static_cast<std::size_t>(k) % cfg.algorithms.size()];
    islands.emplace_back(k, algo, scenario, cfg, consts, seeds);
  }

  OptimizeResult result;
  std::vector<std::vector<GenerationRecord>> records(cfg.islands);
  const int jobs = std::max(1, std::min(cfg.jobs, cfg.islands));
  int done = 0;
  while (done < cfg.generations) {
    const int span = std::min(cfg.migration_interval, cfg.generations - done);
    if (jobs == 1) {
      for (int k = 0; k < cfg.islands; ++k) islands[k].evolve(span, done + 1, records[k]);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
          for (int k = w; k < cfg.islands; k += jobs) islands[k].evolve(span, done + 1, records[k]);
        });
      for (auto& t : pool) t.join();
    }
    done += span;
    if (done < cfg.generations && cfg.islands > 1 && cfg.migrants > 0) {
      // Ring: island k sends its best to k+1, all from the same pre-migration snapshot.
      std::vector<RandomKeyVector> keys(cfg.islands);
      std::vector<double> cost(cfg.islands);
      for (int k = 0; k < cfg.islands; ++k) {
        keys[k] = islands[k].best_keys();
        cost[k] = islands[k].best_cost();
      }
      for (int k = 0; k < cfg.islands; ++k) {
        const int to = (k + 1) % cfg.islands;
        for (int m = 0; m < cfg.migrants; ++m) islands[to].receive(keys[k], cost[k]);
        result.trace.migrations.push_back({done, k, to, cost[k]});
      }
    }
  }

  int best = 0;
  for (int k = 1; k < cfg.islands; ++k)
    if (islands[k].best_cost() < islands[best].best_cost()) best = k;
  for (int k = 0; k < cfg.islands; ++k) {
    result.evaluations += islands[k].evaluations();
    result.trace.records.insert(result.trace.records.end(), records[k].begin(), records[k].end());
  }
  std::stable_sort(result.trace.records.begin(), result.trace.records.end(),
                   [](const GenerationRecord& a, const GenerationRecord& b) {
                     return a.generation != b.generation ? a.generation < b.generation : a.island < b.island;
                   });
  result.best = tour_cost(scenario, decode(islands[best].best_keys()), consts, cfg.tour);
  return result;
}

}  // namespace orbitour
