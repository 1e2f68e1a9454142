#pragma once

#include "orbitour/dynamics.hpp"
#include "orbitour/propagator.hpp"

namespace orbitour {

// Orbit-averaged elements: osculating a, f, g, h, k averaged over one ballistic
// revolution with instantaneous J2. Removes the ~10 km short-period swing of a.
struct MeanElements {
  double a = 0.0;
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
  double k = 0.0;
  double e() const;
  double i() const;
  double raan() const;
};

MeanElements mean_elements(const SpacecraftState& state, const PhysicalConstants& consts = {}, int samples = 120,
                           double max_step = 10.0);

// Osculating state at longitude L whose mean elements are (a, f, g, h, k).
SpacecraftState osculating_from_mean(const MeanElements& target, double L, double mass, double epoch,
                                     const PhysicalConstants& consts = {}, int iterations = 6);

}  // namespace orbitour
