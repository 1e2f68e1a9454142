#pragma once

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "orbitour/constants.hpp"
#include "orbitour/elements.hpp"

namespace orbitour {

struct ThrusterSpec {
  double thrust = 12.6;           // N, single thruster
  int cluster = 1;                // thrusters firing together
  double isp = 277.0;             // s
  double t_on = 5.0;              // s, longest continuous burn
  double t_cooldown = 120.0;      // s, shortest off time between burns
  double min_impulse_bit = 1.0;   // N s

  double peak_thrust_kn() const { return 1e-3 * thrust * cluster; }
  double mass_flow(const PhysicalConstants& c = {}) const { return peak_thrust_kn() / (isp * c.g0); }
  double exhaust_velocity(const PhysicalConstants& c = {}) const { return isp * c.g0; }
  // Fuel one full-length burn consumes.
  double fuel_per_burn(const PhysicalConstants& c = {}) const { return mass_flow(c) * t_on; }
};

enum class BurnLocation { Perigee, Apogee, AscendingNode, DescendingNode };

std::string to_string(BurnLocation loc);
BurnLocation burn_location_from_string(const std::string& s);

struct ImpulseEvent {
  double epoch = 0.0;                                    // s
  Eigen::Vector3d dv_lvlh = Eigen::Vector3d::Zero();     // km/s
  BurnLocation location = BurnLocation::Perigee;
};

struct BurnPlan {
  std::vector<ImpulseEvent> impulses;
  double total_dv() const;
};

struct LegEstimate {
  std::string label;
  double dv = 0.0;    // km/s
  int burns = 0;
  double tof = 0.0;   // s
  double fuel = 0.0;  // kg
};

struct TransferEstimate {
  double dv_total = 0.0;
  std::vector<LegEstimate> dv_legs;
  double fuel_mass = 0.0;
  double tof_total = 0.0;
  double phasing_coast = 0.0;
  SpacecraftState end_state;
};

// A contiguous thrusting stretch of a maneuver ("mht" or "nic") and the mean state it
// starts from; coasts between phases are secular.
struct ThrustPhase {
  std::string kind;
  SpacecraftState start;
  double duration = 0.0;  // s
  double target_a = 0.0;  // km
  double target_i = 0.0;  // rad
  int first_impulse = 0;  // [first, last) into the plan
  int last_impulse = 0;
};

struct Maneuver {
  TransferEstimate estimate;
  BurnPlan plan;
  std::vector<ThrustPhase> phases;
};

struct EstimatorOptions {
  bool build_burn_plan = true;
  // Fuel the vehicle may spend on this maneuver; exceeding it raises InsufficientFuel.
  double available_fuel = std::numeric_limits<double>::infinity();
};

struct HohmannLegs {
  double departure = 0.0;        // km/s
  double circularization = 0.0;  // km/s
  double total() const { return departure + circularization; }
};

// Two-burn Hohmann split as a function of xi = r1 / r0.
HohmannLegs mht_delta_v(double r0, double r1, const PhysicalConstants& consts = {});

// Period averaged over the radius sweep of a multi-revolution transfer.
double mht_average_period(double r0, double r1, const PhysicalConstants& consts = {});

double nic_delta_v(double di, double r, const PhysicalConstants& consts = {});

// Rocket equation, fuel spent from initial mass m0.
double fuel_for_dv(double m0, double dv, double isp, const PhysicalConstants& consts = {});

// ceil(fuel / fuel_per_burn).
int burn_count(double fuel, const ThrusterSpec& thruster, const PhysicalConstants& consts = {});

// Burns that fit in one revolution: min(cap, floor(P / (t_on + t_cooldown))).
int burns_per_orbit(double period, const ThrusterSpec& thruster, int cap);

// ceil(k / b) revolutions; if not even one burn fits per revolution, the burns are strung
// back to back with cool-downs and rounded up to whole revolutions.
double duty_cycle_tof(int k, double period, const ThrusterSpec& thruster, int cap);

// Largest delta-v one burn of length t_on can deliver at mass m.
double per_burn_capability(double mass, const ThrusterSpec& thruster, const PhysicalConstants& consts = {});

Maneuver mht_estimate(double r0, double r1, double craft_mass, const ThrusterSpec& thruster,
                      const PhysicalConstants& consts = {}, const EstimatorOptions& opts = {});

Maneuver nic_estimate(double di, double r, double craft_mass, const ThrusterSpec& thruster,
                      const PhysicalConstants& consts = {}, const EstimatorOptions& opts = {});

// Coast before the raise/lower so that the chaser reaches the target longitude at
// arrival: L_c + w_c * c = L_t(arrival) + w_t * c - pi (mod 2 pi), with J2 longitude rates.
double phasing_coast(double L_chaser, double L_target_at_arrival, double tof_mht,
                     const KeplerianState& departure_orbit, const KeplerianState& target_orbit,
                     const PhysicalConstants& consts = {});

// Raise: phasing coast, MHT, coast to node, NIC. Lower (or equal radius): coast to node,
// NIC, phasing coast, MHT. Target elements are given at from.epoch and drift secularly.
Maneuver sequential_mht_nic(const SpacecraftState& from, const KeplerianState& target, double payload_release,
                            const ThrusterSpec& thruster, const PhysicalConstants& consts = {},
                            const EstimatorOptions& opts = {});

Maneuver decommission_estimate(const SpacecraftState& from, double decom_radius, const ThrusterSpec& thruster,
                               const PhysicalConstants& consts = {}, const EstimatorOptions& opts = {});

// Folds impulses smaller than the minimum impulse bit at the given mass into the preceding impulse.
void merge_small_impulses(BurnPlan& plan, double mass, double min_impulse_bit);

}  // namespace orbitour
