#pragma once

#include "orbitour/constants.hpp"
#include "orbitour/elements.hpp"

namespace orbitour {

struct SecularRates {
  double raan_dot = 0.0;  // rad/s
  double argp_dot = 0.0;  // rad/s
};

// First-order secular J2 drift. (Re/p) enters squared; a first-power variant
// gives sun-synchronous inclinations far from ~97.4 deg in LEO and is not used.
SecularRates j2_secular_rates(double a, double e, double i, const PhysicalConstants& consts = {});

// Mean anomaly rate including the J2 secular correction.
double j2_mean_anomaly_rate(double a, double e, double i, const PhysicalConstants& consts = {});

// Argument-of-latitude rate (omega_dot + M_dot); the node-to-node rate of near-circular orbits.
double j2_arglat_rate(double a, double e, double i, const PhysicalConstants& consts = {});

// Mean true-longitude rate (raan_dot + omega_dot + M_dot) for prograde orbits.
double j2_longitude_rate(double a, double e, double i, const PhysicalConstants& consts = {});

// Advances raan and argp by their secular rates and the mean anomaly by the
// J2-corrected mean motion; a, e, i are untouched.
KeplerianState propagate_secular(const KeplerianState& kep, double dt, const PhysicalConstants& consts = {});
SpacecraftState propagate_secular(const SpacecraftState& state, double dt, const PhysicalConstants& consts = {});

}  // namespace orbitour
