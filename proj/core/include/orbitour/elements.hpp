#pragma once

#include <Eigen/Core>

#include "orbitour/constants.hpp"

namespace orbitour {

struct KeplerianState {
  double a = 0.0;     // km
  double e = 0.0;
  double i = 0.0;     // rad
  double raan = 0.0;  // rad
  double argp = 0.0;  // rad
  double ta = 0.0;    // true anomaly, rad
};

// Modified equinoctial elements. h, k follow the common tan(i/2)cos(raan),
// tan(i/2)sin(raan) assignment, which is the one the variational equations
// below are written for.
struct MeeState {
  double p = 0.0;  // km
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
  double k = 0.0;
  double L = 0.0;  // rad
  int retrograde = 1;
};

struct SpacecraftState {
  MeeState mee;
  double mass = 0.0;   // kg
  double epoch = 0.0;  // s since scenario start
};

// LVLH components: radial, tangential (along-track), normal (orbit normal).
struct PerturbAccel {
  double dr = 0.0;
  double dt = 0.0;
  double dn = 0.0;
};

struct OrbitScalars {
  double n = 0.0;       // rad/s
  double period = 0.0;  // s
  double vc = 0.0;      // km/s
};

struct CartesianState {
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
};

struct LvlhBasis {
  Eigen::Vector3d er;      // radial
  Eigen::Vector3d etheta;  // along-track
  Eigen::Vector3d ephi;    // orbit normal
};

double wrap_two_pi(double angle);
// Wraps into (-pi, pi].
double wrap_pi(double angle);

MeeState kep_to_mee(const KeplerianState& kep, int retrograde = 1);
KeplerianState mee_to_kep(const MeeState& mee);

OrbitScalars orbit_scalars(double a, const PhysicalConstants& consts = {});

double true_to_mean_anomaly(double ta, double e);
double mean_to_true_anomaly(double mean_anomaly, double e);

// Prograde (I = +1) only.
CartesianState mee_to_cartesian(const MeeState& mee, const PhysicalConstants& consts = {});
MeeState cartesian_to_mee(const CartesianState& rv, const PhysicalConstants& consts = {});

LvlhBasis lvlh_basis(const Eigen::Vector3d& r, const Eigen::Vector3d& v);

// Semi-major axis, eccentricity and inclination straight from MEE.
double mee_sma(const MeeState& mee);
double mee_ecc(const MeeState& mee);
double mee_inc(const MeeState& mee);

}  // namespace orbitour
