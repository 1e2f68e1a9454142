#pragma once

#include <vector>

#include "orbitour/maneuvers.hpp"
#include "orbitour/permutation.hpp"
#include "orbitour/scenario.hpp"

namespace orbitour {

enum class EndCondition { Decommission, ReturnToInsertion, None };

struct TourOptions {
  EndCondition end = EndCondition::Decommission;
  bool build_burn_plans = false;
  // Skips phasing and drift bookkeeping; fuel and delta-v are unaffected because
  // neither depends on RAAN or phase. TOFs are then MHT/NIC only.
  bool fuel_only = false;
  double penalty_factor = 10.0;
};

// One transfer of a tour, with what refinement needs to rebuild it.
struct TourLeg {
  int bundle = -1;             // -1 for the end-of-mission leg
  SpacecraftState start;
  KeplerianState target;       // target elements at start.epoch
  double payload_release = 0.0;
  TransferEstimate estimate;
  BurnPlan plan;
  std::vector<ThrustPhase> phases;
};

struct Tour {
  Permutation order;
  std::vector<TourLeg> legs;
  double fuel_total = 0.0;  // kg
  double dv_total = 0.0;    // km/s
  double tof_total = 0.0;   // s
  bool feasible = false;
  double cost = 0.0;        // fuel, or the budget plus a scaled overrun when infeasible
};

Tour tour_cost(const MissionScenario& scenario, const Permutation& order, const PhysicalConstants& consts = {},
               const TourOptions& opts = {});

// Fast objective for the optimizers: equals tour_cost(...).cost.
double tour_fuel_cost(const MissionScenario& scenario, const Permutation& order, const PhysicalConstants& consts,
                      const TourOptions& opts);

// Inclination ascending/descending, bundle mass ascending/descending; ties by index.
std::vector<Permutation> heuristic_walks(const MissionScenario& scenario);

Tour brute_force(const MissionScenario& scenario, int max_n = 9, const PhysicalConstants& consts = {},
                 const TourOptions& opts = {});

}  // namespace orbitour
