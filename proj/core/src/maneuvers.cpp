#include "orbitour/maneuvers.hpp"

#include <algorithm>
#include <cmath>

#include "orbitour/errors.hpp"
#include "orbitour/secular.hpp"

namespace orbitour {

std::string to_string(BurnLocation loc) {
  switch (loc) {
    case BurnLocation::Perigee: return "perigee";
    case BurnLocation::Apogee: return "apogee";
    case BurnLocation::AscendingNode: return "ascending-node";
    case BurnLocation::DescendingNode: return "descending-node";
  }
  return "perigee";
}

BurnLocation burn_location_from_string(const std::string& s) {
  if (s == "perigee") return BurnLocation::Perigee;
  if (s == "apogee") return BurnLocation::Apogee;
  if (s == "ascending-node") return BurnLocation::AscendingNode;
  if (s == "descending-node") return BurnLocation::DescendingNode;
  throw InvalidArgument("unknown burn location: " + s);
}

double BurnPlan::total_dv() const {
  double s = 0.0;
  for (const auto& ev : impulses) s += ev.dv_lvlh.norm();
  return s;
}

HohmannLegs mht_delta_v(double r0, double r1, const PhysicalConstants& consts) {
  if (!(r0 > consts.re) || !(r1 > consts.re)) throw InvalidArgument("transfer radii must exceed Re");
  const double xi = r1 / r0;
  const double v0 = std::sqrt(consts.mu / r0);
  // Rationalized so nearby radii don't cancel.
  const double q = std::abs(r1 - r0) / (r1 + r0);
  HohmannLegs out;
  out.departure = v0 * q / (std::sqrt(2.0 * xi / (xi + 1.0)) + 1.0);
  out.circularization = v0 / std::sqrt(xi) * q / (1.0 + std::sqrt(2.0 / (xi + 1.0)));
  return out;
}

double mht_average_period(double r0, double r1, const PhysicalConstants& consts) {
  if (std::abs(r1 - r0) < 1e-9 * r0) return orbit_scalars(r0, consts).period;
  return 4.0 * kPi / (5.0 * std::sqrt(consts.mu) * (r1 - r0)) * (std::pow(r1, 2.5) - std::pow(r0, 2.5));
}

double nic_delta_v(double di, double r, const PhysicalConstants& consts) {
  if (!(r > consts.re)) throw InvalidArgument("radius must exceed Re");
  if (!(std::abs(di) < kPi)) throw InvalidArgument("|di| must be below pi");
  return 2.0 * std::sqrt(consts.mu / r) * std::sin(0.5 * std::abs(di));
}

double fuel_for_dv(double m0, double dv, double isp, const PhysicalConstants& consts) {
  return m0 * (1.0 - std::exp(-dv / (isp * consts.g0)));
}

int burn_count(double fuel, const ThrusterSpec& thruster, const PhysicalConstants& consts) {
  if (fuel <= 0.0) return 0;
  // Guard against ceil() of a ratio that is an integer up to rounding.
  const double q = fuel / thruster.fuel_per_burn(consts);
  return static_cast<int>(std::ceil(q - 1e-9));
}

int burns_per_orbit(double period, const ThrusterSpec& thruster, int cap) {
  const int fit = static_cast<int>(std::floor(period / (thruster.t_on + thruster.t_cooldown)));
  return std::min(cap, fit);
}

double duty_cycle_tof(int k, double period, const ThrusterSpec& thruster, int cap) {
  if (k <= 0) return 0.0;
  const int b = burns_per_orbit(period, thruster, cap);
  if (b >= 1) return std::ceil(static_cast<double>(k) / b) * period;
  return std::ceil(k * (thruster.t_on + thruster.t_cooldown) / period) * period;
}

double per_burn_capability(double mass, const ThrusterSpec& thruster, const PhysicalConstants& consts) {
  const double q = thruster.fuel_per_burn(consts);
  if (q >= mass) return std::numeric_limits<double>::infinity();
  return thruster.exhaust_velocity(consts) * std::log(mass / (mass - q));
}

void merge_small_impulses(BurnPlan& plan, double mass, double min_impulse_bit) {
  std::vector<ImpulseEvent> out;
  out.reserve(plan.impulses.size());
  for (const auto& ev : plan.impulses) {
    // m [kg] * dv [km/s] * 1e3 = impulse [N s]
    const double bit = mass * ev.dv_lvlh.norm() * 1e3;
    if (bit < min_impulse_bit && !out.empty()) {
      out.back().dv_lvlh += ev.dv_lvlh;
    } else {
      out.push_back(ev);
    }
  }
  plan.impulses = std::move(out);
}

namespace {

struct MhtCore {
  HohmannLegs dv;
  double fuel_d = 0.0, fuel_c = 0.0;
  int k_d = 0, k_c = 0;
  double pbar = 0.0;
  double tof = 0.0;
};

MhtCore mht_core(double r0, double r1, double m0, const ThrusterSpec& th, const PhysicalConstants& c) {
  MhtCore out;
  if (std::abs(r1 - r0) < 1e-9) return out;
  out.dv = mht_delta_v(r0, r1, c);
  out.fuel_d = fuel_for_dv(m0, out.dv.departure, th.isp, c);
  out.fuel_c = fuel_for_dv(m0 - out.fuel_d, out.dv.circularization, th.isp, c);
  out.k_d = burn_count(out.fuel_d, th, c);
  out.k_c = burn_count(out.fuel_c, th, c);
  out.pbar = mht_average_period(r0, r1, c);
  out.tof = duty_cycle_tof(out.k_d + out.k_c, out.pbar, th, 1);
  return out;
}

double rev_spacing(double period, const ThrusterSpec& th) {
  if (burns_per_orbit(period, th, 1) >= 1) return 1.0;
  return std::ceil((th.t_on + th.t_cooldown) / period);
}

// Chronological impulse sequence: departure burns at point A, circularization at the
// opposite point B, in alternating pairs (one burn per revolution on average).
BurnPlan mht_plan(double r0, double r1, double inc, double m0, double t0, const MhtCore& core,
                  const ThrusterSpec& th, const PhysicalConstants& c) {
  BurnPlan plan;
  if (core.k_d + core.k_c == 0) return plan;
  const bool raise = r1 > r0;
  const double sgn = raise ? 1.0 : -1.0;
  const BurnLocation loc_a = raise ? BurnLocation::Perigee : BurnLocation::Apogee;
  const BurnLocation loc_b = raise ? BurnLocation::Apogee : BurnLocation::Perigee;
  const double ve = th.exhaust_velocity(c);
  const double f_d = core.k_d > 0 ? core.fuel_d / core.k_d : 0.0;
  const double f_c = core.k_c > 0 ? core.fuel_c / core.k_c : 0.0;

  double rA = r0, rB = r0, m = m0;
  double t = t0 + 0.5 * th.t_on;
  auto half_period = [&](double ra, double rb) {
    const double a = 0.5 * (ra + rb);
    return kPi / j2_arglat_rate(a, 0.0, inc, c);
  };
  // Tangential impulse at radius r with the other apsis at r_other; returns new other apsis.
  auto apply = [&](double r, double r_other, double dv) {
    const double v = std::sqrt(2.0 * c.mu * r_other / (r * (r + r_other)));
    const double vn = v + sgn * dv;
    const double a = 1.0 / (2.0 / r - vn * vn / c.mu);
    return 2.0 * a - r;
  };
  auto burn = [&](bool departure) {
    const double fuel = departure ? f_d : f_c;
    const double dv = ve * std::log(m / (m - fuel));
    ImpulseEvent ev;
    ev.epoch = t;
    ev.dv_lvlh = Eigen::Vector3d(0.0, sgn * dv, 0.0);
    ev.location = departure ? loc_a : loc_b;
    plan.impulses.push_back(ev);
    m -= fuel;
    if (departure) {
      rB = apply(rA, rB, dv);
    } else {
      rA = apply(rB, rA, dv);
    }
  };

  const int pairs = std::min(core.k_d, core.k_c);
  for (int j = 0; j < pairs; ++j) {
    const double sp = rev_spacing(2.0 * half_period(rA, rB), th);
    burn(true);
    t += half_period(rA, rB) + (sp - 1.0) * 2.0 * half_period(rA, rB);
    burn(false);
    // Back to A, then one spare revolution.
    t += half_period(rA, rB) + sp * 2.0 * half_period(rA, rB);
  }
  const bool extra_departure = core.k_d > core.k_c;
  const int extra = std::abs(core.k_d - core.k_c);
  if (extra > 0 && !extra_departure) t += half_period(rA, rB);
  for (int j = 0; j < extra; ++j) {
    burn(extra_departure);
    t += rev_spacing(2.0 * half_period(rA, rB), th) * 2.0 * half_period(rA, rB);
  }
  merge_small_impulses(plan, m0, th.min_impulse_bit);
  return plan;
}

struct NicCore {
  double dv = 0.0;
  double fuel = 0.0;
  int k = 0;
  double period = 0.0;
  double tof = 0.0;
};

NicCore nic_core(double di, double r, double m0, const ThrusterSpec& th, const PhysicalConstants& c) {
  NicCore out;
  out.period = orbit_scalars(r, c).period;
  if (di == 0.0) return out;
  out.dv = nic_delta_v(di, r, c);
  out.fuel = fuel_for_dv(m0, out.dv, th.isp, c);
  out.k = burn_count(out.fuel, th, c);
  out.tof = duty_cycle_tof(out.k, out.period, th, 2);
  return out;
}

// Burns at alternating nodes starting with the node the chaser sits on at t0.
BurnPlan nic_plan(double di, double r, double inc_mid, double m0, double t0, bool start_ascending,
                  const NicCore& core, const ThrusterSpec& th, const PhysicalConstants& c) {
  BurnPlan plan;
  if (core.k == 0) return plan;
  const double ve = th.exhaust_velocity(c);
  const double fuel = core.fuel / core.k;
  const double node_gap = kPi / j2_arglat_rate(r, 0.0, inc_mid, c);
  const int b = burns_per_orbit(core.period, th, 2);
  double step = node_gap;
  if (b == 1) step = 2.0 * node_gap;
  if (b < 1) step = 2.0 * node_gap * std::ceil((th.t_on + th.t_cooldown) / core.period);
  const double sgn_di = di > 0.0 ? 1.0 : -1.0;
  double m = m0;
  bool ascending = start_ascending;
  for (int j = 0; j < core.k; ++j) {
    const double dv = ve * std::log(m / (m - fuel));
    ImpulseEvent ev;
    ev.epoch = t0 + 0.5 * th.t_on + j * step;
    ev.dv_lvlh = Eigen::Vector3d(0.0, 0.0, sgn_di * (ascending ? 1.0 : -1.0) * dv);
    ev.location = ascending ? BurnLocation::AscendingNode : BurnLocation::DescendingNode;
    plan.impulses.push_back(ev);
    m -= fuel;
    // An odd number of half revolutions switches node.
    if (std::fmod(step / node_gap, 2.0) > 0.5) ascending = !ascending;
  }
  merge_small_impulses(plan, m0, th.min_impulse_bit);
  return plan;
}

SpacecraftState circular_state(double r, double inc, double raan, double u, double mass, double epoch) {
  KeplerianState kep;
  kep.a = r;
  kep.i = inc;
  kep.raan = raan;
  kep.ta = u;
  SpacecraftState s;
  s.mee = kep_to_mee(kep);
  s.mass = mass;
  s.epoch = epoch;
  return s;
}

void append_plan(BurnPlan& dst, const BurnPlan& src) {
  dst.impulses.insert(dst.impulses.end(), src.impulses.begin(), src.impulses.end());
}

void check_fuel(double spent, double mass0, const EstimatorOptions& opts) {
  if (spent > opts.available_fuel + 1e-12) throw InsufficientFuel("maneuver needs more fuel than available");
  if (spent >= mass0) throw InsufficientFuel("maneuver would consume the whole vehicle mass");
}

// MHT from a near-circular state; ends half a revolution past the start longitude.
void run_mht(SpacecraftState& s, double r1, const ThrusterSpec& th, const PhysicalConstants& c,
             const EstimatorOptions& opts, Maneuver& out) {
  const double r0 = mee_sma(s.mee);
  const MhtCore core = mht_core(r0, r1, s.mass, th, c);
  if (core.k_d + core.k_c == 0) return;
  const double fuel = core.fuel_d + core.fuel_c;
  check_fuel(out.estimate.fuel_mass + fuel, s.mass, opts);
  const double inc = mee_inc(s.mee);
  ThrustPhase phase{"mht", s, core.tof, r1, inc, static_cast<int>(out.plan.impulses.size()), 0};
  if (opts.build_burn_plan) append_plan(out.plan, mht_plan(r0, r1, inc, s.mass, s.epoch, core, th, c));
  phase.last_impulse = static_cast<int>(out.plan.impulses.size());
  out.phases.push_back(std::move(phase));

  const int k = core.k_d + core.k_c;
  out.estimate.dv_legs.push_back({"mht_departure", core.dv.departure, core.k_d,
                                  core.tof * core.k_d / k, core.fuel_d});
  out.estimate.dv_legs.push_back({"mht_circularization", core.dv.circularization, core.k_c,
                                  core.tof * core.k_c / k, core.fuel_c});
  out.estimate.dv_total += core.dv.total();
  out.estimate.fuel_mass += fuel;
  out.estimate.tof_total += core.tof;

  KeplerianState kep = mee_to_kep(s.mee);
  const double L_start = s.mee.L;
  kep.a = 0.5 * (r0 + r1);
  kep = propagate_secular(kep, core.tof, c);
  kep.a = r1;
  kep.e = 0.0;
  MeeState m = kep_to_mee(kep, s.mee.retrograde);
  m.L = wrap_two_pi(L_start + kPi);
  s.mee = m;
  s.mass -= fuel;
  s.epoch += core.tof;
}

void run_coast(SpacecraftState& s, KeplerianState* target, double dt, const std::string& label,
               const PhysicalConstants& c, Maneuver& out) {
  if (dt <= 0.0) return;
  s = propagate_secular(s, dt, c);
  if (target) *target = propagate_secular(*target, dt, c);
  out.estimate.dv_legs.push_back({label, 0.0, 0, dt, 0.0});
  out.estimate.tof_total += dt;
}

// Coast to the next node, then NIC to the target inclination.
void run_nic(SpacecraftState& s, KeplerianState& target, const ThrusterSpec& th, const PhysicalConstants& c,
             const EstimatorOptions& opts, Maneuver& out) {
  const double inc0 = mee_inc(s.mee);
  const double di = target.i - inc0;
  if (std::abs(di) < 1e-12) return;
  const double r = mee_sma(s.mee);
  const NicCore core = nic_core(di, r, s.mass, th, c);
  if (core.k == 0) return;

  KeplerianState kep = mee_to_kep(s.mee);
  const double u = wrap_two_pi(kep.argp + kep.ta);
  const double u_next = u < kPi ? kPi : kTwoPi;
  double coast = (u_next - u) / j2_arglat_rate(r, 0.0, inc0, c);
  bool ascending = u_next >= kTwoPi;
  if (u < 1e-10 || kTwoPi - u < 1e-10) {
    coast = 0.0;
    ascending = true;
  } else if (std::abs(u - kPi) < 1e-10) {
    coast = 0.0;
    ascending = false;
  }
  run_coast(s, &target, coast, "node_coast", c, out);

  check_fuel(out.estimate.fuel_mass + core.fuel, s.mass, opts);
  const double inc_mid = 0.5 * (inc0 + target.i);
  ThrustPhase phase{"nic", s, core.tof, r, target.i, static_cast<int>(out.plan.impulses.size()), 0};
  if (opts.build_burn_plan)
    append_plan(out.plan, nic_plan(di, r, inc_mid, s.mass, s.epoch, ascending, core, th, c));
  phase.last_impulse = static_cast<int>(out.plan.impulses.size());
  out.phases.push_back(std::move(phase));
  out.estimate.dv_legs.push_back({"nic", core.dv, core.k, core.tof, core.fuel});
  out.estimate.dv_total += core.dv;
  out.estimate.fuel_mass += core.fuel;
  out.estimate.tof_total += core.tof;

  kep = mee_to_kep(s.mee);
  kep.i = inc_mid;
  kep = propagate_secular(kep, core.tof, c);
  kep.i = target.i;
  s.mee = kep_to_mee(kep, s.mee.retrograde);
  s.mass -= core.fuel;
  s.epoch += core.tof;
  target = propagate_secular(target, core.tof, c);
}

// Phasing coast followed by the MHT to the target radius.
void run_phased_mht(SpacecraftState& s, KeplerianState& target, const ThrusterSpec& th,
                    const PhysicalConstants& c, const EstimatorOptions& opts, Maneuver& out) {
  const double r0 = mee_sma(s.mee);
  const MhtCore core = mht_core(r0, target.a, s.mass, th, c);
  if (core.k_d + core.k_c == 0) return;
  const KeplerianState tgt_arrival = propagate_secular(target, core.tof, c);
  const double L_t = kep_to_mee(tgt_arrival).L;
  const double coast = phasing_coast(s.mee.L, L_t, core.tof, mee_to_kep(s.mee), target, c);
  run_coast(s, &target, coast, "phasing_coast", c, out);
  out.estimate.phasing_coast += coast;
  run_mht(s, target.a, th, c, opts, out);
  target = propagate_secular(target, core.tof, c);
}

}  // namespace

Maneuver mht_estimate(double r0, double r1, double craft_mass, const ThrusterSpec& thruster,
                      const PhysicalConstants& consts, const EstimatorOptions& opts) {
  if (!(r0 > consts.re) || !(r1 > consts.re)) throw InvalidArgument("transfer radii must exceed Re");
  if (!(craft_mass > 0.0)) throw InvalidArgument("mass must be positive");
  Maneuver out;
  SpacecraftState s = circular_state(r0, 0.0, 0.0, 0.0, craft_mass, 0.0);
  run_mht(s, r1, thruster, consts, opts, out);
  out.estimate.end_state = s;
  return out;
}

Maneuver nic_estimate(double di, double r, double craft_mass, const ThrusterSpec& thruster,
                      const PhysicalConstants& consts, const EstimatorOptions& opts) {
  if (!(r > consts.re)) throw InvalidArgument("radius must exceed Re");
  if (!(std::abs(di) < kPi)) throw InvalidArgument("|di| must be below pi");
  if (!(craft_mass > 0.0)) throw InvalidArgument("mass must be positive");
  Maneuver out;
  // Polar reference orbit placed at its ascending node so a negative di stays valid.
  const double inc0 = kPi / 2.0;
  SpacecraftState s = circular_state(r, inc0, 0.0, 0.0, craft_mass, 0.0);
  KeplerianState target = mee_to_kep(s.mee);
  target.i = inc0 + di;
  run_nic(s, target, thruster, consts, opts, out);
  out.estimate.end_state = s;
  return out;
}

double phasing_coast(double L_chaser, double L_target_at_arrival, double tof_mht,
                     const KeplerianState& departure_orbit, const KeplerianState& target_orbit,
                     const PhysicalConstants& consts) {
  (void)tof_mht;  // already folded into L_target_at_arrival
  const double wc = j2_longitude_rate(departure_orbit.a, departure_orbit.e, departure_orbit.i, consts);
  const double wt = j2_longitude_rate(target_orbit.a, target_orbit.e, target_orbit.i, consts);
  const double rhs = L_target_at_arrival - kPi - L_chaser;
  const double dw = wc - wt;
  const double tol = 1e-12;
  double phase = wrap_two_pi(dw >= 0.0 ? rhs : -rhs);
  if (phase < tol || kTwoPi - phase < tol) return 0.0;
  if (std::abs(dw) < 1e-15) return kTwoPi / wc;
  return phase / std::abs(dw);
}

Maneuver sequential_mht_nic(const SpacecraftState& from, const KeplerianState& target, double payload_release,
                            const ThrusterSpec& thruster, const PhysicalConstants& consts,
                            const EstimatorOptions& opts) {
  if (payload_release < 0.0) throw InvalidArgument("payload release mass must be non-negative");
  Maneuver out;
  SpacecraftState s = from;
  KeplerianState tgt = target;
  const double r0 = mee_sma(s.mee);
  if (tgt.a > r0) {
    run_phased_mht(s, tgt, thruster, consts, opts, out);
    run_nic(s, tgt, thruster, consts, opts, out);
  } else {
    run_nic(s, tgt, thruster, consts, opts, out);
    run_phased_mht(s, tgt, thruster, consts, opts, out);
  }
  // Pin a and i to the target exactly.
  KeplerianState kep = mee_to_kep(s.mee);
  kep.a = target.a;
  kep.e = 0.0;
  kep.i = target.i;
  const double L = s.mee.L;
  s.mee = kep_to_mee(kep, s.mee.retrograde);
  s.mee.L = L;
  if (payload_release >= s.mass) throw InsufficientFuel("payload release leaves no vehicle mass");
  s.mass -= payload_release;
  out.estimate.end_state = s;
  return out;
}

Maneuver decommission_estimate(const SpacecraftState& from, double decom_radius, const ThrusterSpec& thruster,
                               const PhysicalConstants& consts, const EstimatorOptions& opts) {
  Maneuver out;
  SpacecraftState s = from;
  const double r0 = mee_sma(s.mee);
  if (std::abs(r0 - decom_radius) > 1e-9) run_mht(s, decom_radius, thruster, consts, opts, out);
  out.estimate.end_state = s;
  return out;
}

}  // namespace orbitour
