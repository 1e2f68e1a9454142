#pragma once

#include <string>
#include <vector>

#include "orbitour/averaging.hpp"
#include "orbitour/maneuvers.hpp"
#include "orbitour/scenario.hpp"
#include "orbitour/scp.hpp"
#include "orbitour/stage_grid.hpp"
#include "orbitour/tour.hpp"

namespace orbitour {

struct RefineOptions {
  int arcs_per_problem = 1;  // thrust phases optimized together; only 1 is supported
  GridOptions grid;
  PropagatorConfig prop;     // isp is overwritten with the thruster's
  TrustRegion trust;
  ScpOptions scp;
  TourOptions tour;          // used to rebuild burn plans
  int jobs = 1;
};

struct ArcErrors {
  double da_km = 0.0;
  double de = 0.0;
  double di_deg = 0.0;
};

// Mean-element errors of `state` against a circular target of radius a and inclination i.
ArcErrors mean_errors(const SpacecraftState& state, double target_a, double target_i,
                      const PhysicalConstants& consts = {});

struct ArcSetup {
  OcpProblem problem;
  WarmStart warm;
  MeanElements target;  // at arc end; RAAN taken from the warm start
};

// Grid, warm start and terminal reference for one thrust phase. `plan` holds the
// phase's impulses only.
ArcSetup build_arc_problem(const ThrustPhase& phase, const BurnPlan& plan, const ThrusterSpec& thruster,
                           const RefineOptions& opts = {}, const PhysicalConstants& consts = {});

struct RefinedLeg {
  int leg = 0;
  int bundle = -1;
  std::string kind;
  double target_a = 0.0;  // km
  double target_i = 0.0;  // rad
  double dv_estimate = 0.0;    // km/s, impulsive plan
  double fuel_estimate = 0.0;  // kg
  RefinedArc arc;
  ArcErrors errors;
};

struct RefinedTour {
  std::vector<RefinedLeg> arcs;
  double dv_total = 0.0;
  double fuel_total = 0.0;
  double dv_estimate = 0.0;
  double fuel_estimate = 0.0;
  bool all_converged = true;
};

RefinedLeg refine_phase(const ThrustPhase& phase, const BurnPlan& plan, const ThrusterSpec& thruster,
                        const RefineOptions& opts = {}, const PhysicalConstants& consts = {});

// Every thrust phase of every leg becomes one arc; coasts between phases stay secular.
RefinedTour refine_tour(const Tour& tour, const MissionScenario& scenario, const RefineOptions& opts = {},
                        const PhysicalConstants& consts = {});

}  // namespace orbitour
