#pragma once

#include <Eigen/Core>

#include "orbitour/constants.hpp"
#include "orbitour/elements.hpp"

namespace orbitour {

// x = [p, f, g, h, k, L, m]
using StateVec = Eigen::Matrix<double, 7, 1>;
using StateMat = Eigen::Matrix<double, 7, 7>;
using ControlMat = Eigen::Matrix<double, 7, 3>;

struct MeeRates {
  double dp = 0.0;
  double df = 0.0;
  double dg = 0.0;
  double dh = 0.0;
  double dk = 0.0;
  double dL = 0.0;
};

struct ThrustEffect {
  PerturbAccel accel;
  double mdot = 0.0;  // kg/s, never positive
};

MeeRates gve_rates(const SpacecraftState& state, const PerturbAccel& accel, const PhysicalConstants& consts = {});

PerturbAccel j2_accel_lvlh(const SpacecraftState& state, const PhysicalConstants& consts = {});

// thrust in kN, direction a unit LVLH vector (r, t, n), isp in s.
ThrustEffect thrust_and_mass_rates(double thrust, const Eigen::Vector3d& direction, const SpacecraftState& state,
                                   double isp, const PhysicalConstants& consts = {});

StateVec to_state_vec(const SpacecraftState& s);
SpacecraftState from_state_vec(const StateVec& x, double epoch, int retrograde = 1);

// Time derivative of the 7-state under LVLH thrust u [kN] and, optionally, J2.
// Fast path used by the propagator and the SCP linearization.
StateVec state_rhs(const StateVec& x, const Eigen::Vector3d& u, double isp, const PhysicalConstants& consts,
                   bool j2 = true);

}  // namespace orbitour
