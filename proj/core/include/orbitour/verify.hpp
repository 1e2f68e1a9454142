#pragma once

#include <string>
#include <vector>

#include "orbitour/propagator.hpp"
#include "orbitour/refine.hpp"

namespace orbitour {

struct Tolerances {
  double da_km = 10.0;
  double di_deg = 0.1;
  double fuel_rel = 0.05;
};

struct ArcVerification {
  int leg = 0;
  int bundle = -1;
  std::string kind;
  double target_a = 0.0;    // km
  double target_i = 0.0;    // deg
  double achieved_a = 0.0;  // km, mean
  double achieved_e = 0.0;
  double achieved_i = 0.0;  // deg, mean
  ArcErrors errors;
  double fuel_numeric = 0.0;   // kg
  double fuel_analytic = 0.0;  // kg, rocket equation on the impulsive plan
  double dv_numeric = 0.0;     // km/s
  double consistency = 0.0;    // normalized terminal gap to the refined arc
  bool pass_a = false;
  bool pass_i = false;
  bool pass_fuel = false;
  bool pass = false;  // injection tolerances only
};

struct VerificationReport {
  Tolerances tolerances;
  std::vector<ArcVerification> arcs;
  double dv_total = 0.0;
  double fuel_total = 0.0;
  bool all_pass = true;
  bool all_fuel_pass = true;
};

// Re-propagates the arc's controls from its first state with the plain RK4 propagator.
ArcVerification verify_arc(const RefinedArc& arc, double target_a, double target_i, double fuel_analytic,
                           const Tolerances& tol = {}, const PropagatorConfig& prop = {},
                           const PhysicalConstants& consts = {});

VerificationReport verify_trajectory(const RefinedTour& refined, const Tolerances& tol = {},
                                     const PropagatorConfig& prop = {}, const PhysicalConstants& consts = {});

}  // namespace orbitour
