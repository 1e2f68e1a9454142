#include "orbitour/verify.hpp"

#include <cmath>

#include "orbitour/averaging.hpp"

namespace orbitour {

ArcVerification verify_arc(const RefinedArc& arc, double target_a, double target_i, double fuel_analytic,
                           const Tolerances& tol, const PropagatorConfig& prop, const PhysicalConstants& consts) {
  ArcVerification v;
  v.target_a = target_a;
  v.target_i = target_i * kRadToDeg;
  v.fuel_analytic = fuel_analytic;
  if (arc.states.empty()) return v;

  ControlSchedule schedule;
  schedule.reserve(arc.durations.size());
  for (std::size_t i = 0; i < arc.durations.size(); ++i) schedule.push_back({arc.durations[i], arc.controls[i]});
  const SpacecraftState x0 = from_state_vec(arc.states.front(), arc.t0);
  PropagatorConfig cfg = prop;
  if (arc.isp > 0.0) cfg.isp = arc.isp;
  const Trajectory tr = propagate_numeric(x0, schedule, cfg, consts);
  const StateVec& xf = tr.states.back();
  const SpacecraftState end = from_state_vec(xf, tr.times.back());

  const MeanElements m = mean_elements(end, consts);
  v.achieved_a = m.a;
  v.achieved_e = m.e();
  v.achieved_i = m.i() * kRadToDeg;
  v.errors = {m.a - target_a, m.e(), v.achieved_i - v.target_i};
  v.fuel_numeric = tr.states.front()[6] - xf[6];
  v.dv_numeric = cfg.isp * consts.g0 * std::log(tr.states.front()[6] / xf[6]);

  StateVec scale;
  scale << xf[0], 1.0, 1.0, 1.0, 1.0, 1.0, tr.states.front()[6];
  v.consistency = (xf - arc.states.back()).cwiseQuotient(scale).cwiseAbs().maxCoeff();

  v.pass_a = std::abs(v.errors.da_km) <= tol.da_km;
  v.pass_i = std::abs(v.errors.di_deg) <= tol.di_deg;
  v.pass = v.pass_a && v.pass_i;
  v.pass_fuel = fuel_analytic > 0.0 ? std::abs(v.fuel_numeric - fuel_analytic) <= tol.fuel_rel * fuel_analytic
                                    : v.fuel_numeric <= 1e-12;
  return v;
}

VerificationReport verify_trajectory(const RefinedTour& refined, const Tolerances& tol, const PropagatorConfig& prop,
                                     const PhysicalConstants& consts) {
  VerificationReport rep;
  rep.tolerances = tol;
  for (const RefinedLeg& r : refined.arcs) {
    ArcVerification v = verify_arc(r.arc, r.target_a, r.target_i, r.fuel_estimate, tol, prop, consts);
    v.leg = r.leg;
    v.bundle = r.bundle;
    v.kind = r.kind;
    rep.dv_total += v.dv_numeric;
    rep.fuel_total += v.fuel_numeric;
    rep.all_pass = rep.all_pass && v.pass;
    rep.all_fuel_pass = rep.all_fuel_pass && v.pass_fuel;
    rep.arcs.push_back(std::move(v));
  }
  return rep;
}

}  // namespace orbitour
