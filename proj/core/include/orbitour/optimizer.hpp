#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orbitour/permutation.hpp"
#include "orbitour/tour.hpp"

namespace orbitour {

enum class IslandAlgorithm { Genetic, ParticleSwarm };

struct GeneticParams {
  int tournament = 3;
  double crossover_rate = 0.9;
  double blend_alpha = 0.3;
  double mutation_sigma = 0.15;
  std::optional<double> mutation_rate;  // per gene; defaults to 1/n
  int elites = 2;
};

struct SwarmParams {
  double inertia = 0.7298;
  double cognitive = 1.49618;
  double social = 1.49618;
  double max_velocity = 0.25;
};

struct OptimizerConfig {
  int islands = 8;
  int population = 64;
  int generations = 200;
  int migration_interval = 20;
  int migrants = 1;
  // Empty: alternate genetic / particle-swarm by island index.
  std::vector<IslandAlgorithm> algorithms;
  std::uint64_t seed = 0;
  // Share of each island spawned around the candidate tours, when any are given.
  double seeding_fraction = 0.5;
  double mallows_theta = 1.0;
  int jobs = 1;
  GeneticParams genetic;
  SwarmParams swarm;
  TourOptions tour;
};

struct GenerationRecord {
  int generation = 0;
  int island = 0;
  double best = 0.0;
  double mean = 0.0;
};

struct MigrationEvent {
  int generation = 0;
  int from = 0;
  int to = 0;
  double cost = 0.0;
};

struct EvolutionTrace {
  std::vector<GenerationRecord> records;
  std::vector<MigrationEvent> migrations;
};

struct OptimizeResult {
  Tour best;
  EvolutionTrace trace;
  long evaluations = 0;
};

OptimizeResult optimize(const MissionScenario& scenario, const OptimizerConfig& config,
                        const std::vector<Permutation>& seeds = {}, const PhysicalConstants& consts = {});

}  // namespace orbitour
