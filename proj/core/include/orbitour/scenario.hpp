#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitour/constants.hpp"
#include "orbitour/elements.hpp"
#include "orbitour/maneuvers.hpp"

namespace orbitour {

inline constexpr int kScenarioSchemaVersion = 1;

// Orbit as written in scenario files: km and degrees. Kept alongside the internal
// radian form so file round trips are exact.
struct OrbitSpec {
  double a_km = 0.0;
  double e = 0.0;
  double i_deg = 0.0;
  double raan_deg = 0.0;
  double argp_deg = 0.0;
  double ta_deg = 0.0;

  KeplerianState to_kep() const;
  static OrbitSpec from_kep(const KeplerianState& kep);
  bool operator==(const OrbitSpec&) const = default;
};

enum class PayloadClass { CubeSat, PocketQube, SmallSat };

std::string to_string(PayloadClass c);
PayloadClass payload_class_from_string(const std::string& s);
double nominal_payload_mass(PayloadClass c);

struct SpacecraftSpec {
  double wet_mass = 235.0;           // kg
  double payload_mass_total = 80.0;  // kg, nominal manifest
  double fuel_mass = 35.0;           // kg, budget
  ThrusterSpec thruster;

  double dry_mass() const { return wet_mass - payload_mass_total - fuel_mass; }
  bool operator==(const SpacecraftSpec& o) const;
};

struct PayloadSpec {
  PayloadClass cls = PayloadClass::CubeSat;
  double mass = 0.0;  // kg
  bool operator==(const PayloadSpec&) const = default;
};

struct Bundle {
  OrbitSpec target;
  std::vector<PayloadSpec> payloads;

  double mass() const;
  bool operator==(const Bundle&) const = default;
};

struct MissionScenario {
  SpacecraftSpec spacecraft;
  OrbitSpec insertion;
  double decommission_alt_km = 250.0;
  std::vector<Bundle> bundles;
  double epoch0 = 0.0;
  std::uint64_t seed = 0;

  double decommission_radius(const PhysicalConstants& c = {}) const { return c.re + decommission_alt_km; }
  double payload_mass() const;
  // Dry mass + fuel budget + the sampled payload masses.
  double initial_mass() const;
  SpacecraftState initial_state() const;
  bool operator==(const MissionScenario& o) const;
};

struct PayloadInventory {
  int cubesats = 8;
  int pocketqubes = 4;
  int smallsats = 1;
  int total() const { return cubesats + pocketqubes + smallsats; }
};

struct ScenarioConfig {
  SpacecraftSpec spacecraft;
  PayloadInventory inventory;
  OrbitSpec insertion{6878.137, 0.0, 97.0, 158.0, 0.0, 0.0};
  double decommission_alt_km = 250.0;
  double nominal_alt_km = 500.0;
  double alt_spread_km = 50.0;
  double raan_nominal_deg = 158.0;
  double argp_nominal_deg = 0.0;
  double ta_nominal_deg = 0.0;
  double angle_spread_deg = 180.0;
  double mass_spread = 0.15;  // mean of the exponential excess over nominal mass
  int min_bundles = 2;
  std::optional<int> max_bundles;    // defaults to the payload count
  std::optional<int> fixed_bundles;  // overrides the range when set
};

// Inclination with a RAAN drift of 360 deg per year for a circular orbit of radius a.
double sso_inclination(double a, const PhysicalConstants& consts = {});

MissionScenario sample_scenario(const ScenarioConfig& config, std::uint64_t seed, const PhysicalConstants& consts = {});

}  // namespace orbitour
