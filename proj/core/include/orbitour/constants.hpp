#pragma once

#include <numbers>

namespace orbitour {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kDaysPerYear = 365.25;

// Units: km, kg, s, rad. g0 is in km/s^2 so that T [kN] / (Isp * g0) is kg/s.
struct PhysicalConstants {
  double mu = 398600.4418;
  double re = 6378.137;
  double j2 = 1.08263e-3;
  double g0 = 9.80665e-3;
};

// RAAN rate of a sun-synchronous orbit.
inline constexpr double kSsoRaanRate = kTwoPi / (kDaysPerYear * kSecondsPerDay);

}  // namespace orbitour
