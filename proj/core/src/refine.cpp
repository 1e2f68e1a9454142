#include "orbitour/refine.hpp"

#include <cmath>

#include "orbitour/errors.hpp"
#include "orbitour/parallel.hpp"

namespace orbitour {

namespace {

MeanElements circular_mean(double a, double i, double raan) {
  MeanElements m;
  m.a = a;
  const double t = std::tan(0.5 * i);
  m.h = t * std::cos(raan);
  m.k = t * std::sin(raan);
  return m;
}

MeanElements mean_of(const MeeState& mee) {
  MeanElements m;
  m.a = mee_sma(mee);
  m.f = mee.f;
  m.g = mee.g;
  m.h = mee.h;
  m.k = mee.k;
  return m;
}

BurnPlan sub_plan(const BurnPlan& plan, int first, int last) {
  BurnPlan out;
  out.impulses.assign(plan.impulses.begin() + first, plan.impulses.begin() + last);
  return out;
}

}  // namespace

ArcErrors mean_errors(const SpacecraftState& state, double target_a, double target_i,
                      const PhysicalConstants& consts) {
  const MeanElements m = mean_elements(state, consts);
  return {m.a - target_a, m.e(), (m.i() - target_i) * kRadToDeg};
}

ArcSetup build_arc_problem(const ThrustPhase& phase, const BurnPlan& plan, const ThrusterSpec& thruster,
                           const RefineOptions& opts, const PhysicalConstants& consts) {
  if (!(phase.duration > 0.0)) throw InvalidArgument("thrust phase needs a positive duration");
  ArcSetup setup;
  OcpProblem& pb = setup.problem;
  pb.consts = consts;
  pb.prop = opts.prop;
  pb.prop.isp = thruster.isp;
  pb.peak_thrust = thruster.peak_thrust_kn();

  const SpacecraftState& s = phase.start;
  pb.x0_hat = osculating_from_mean(mean_of(s.mee), s.mee.L, s.mass, s.epoch, consts);
  const double a0 = mee_sma(s.mee);
  const double period = kTwoPi * std::sqrt(a0 * a0 * a0 / consts.mu);
  pb.grid = build_stage_grid(plan, thruster, s.epoch, phase.duration, period, opts.grid);

  setup.warm = warm_start(plan, pb.grid, pb.x0_hat, pb.prop, consts);
  const StateVec& xe = setup.warm.states.back();
  const double t_end = s.epoch + pb.grid.horizon();
  const MeanElements warm_end = mean_elements(from_state_vec(xe, t_end), consts);
  setup.target = circular_mean(phase.target_a, phase.target_i, warm_end.raan());
  StateVec ref = to_state_vec(osculating_from_mean(setup.target, xe[5], xe[6], t_end, consts));
  ref[5] = xe[5];  // keep the unwrapped longitude
  pb.x_ref = ref;
  return setup;
}

RefinedLeg refine_phase(const ThrustPhase& phase, const BurnPlan& plan, const ThrusterSpec& thruster,
                        const RefineOptions& opts, const PhysicalConstants& consts) {
  RefinedLeg out;
  out.kind = phase.kind;
  out.target_a = phase.target_a;
  out.target_i = phase.target_i;
  out.dv_estimate = plan.total_dv();
  out.fuel_estimate = fuel_for_dv(phase.start.mass, out.dv_estimate, thruster.isp, consts);
  ArcSetup setup = build_arc_problem(phase, plan, thruster, opts, consts);
  out.arc = scp_solve(setup.problem, setup.warm.controls, opts.trust, opts.scp);
  out.arc.warnings.insert(out.arc.warnings.end(), setup.warm.warnings.begin(), setup.warm.warnings.end());
  const double t_end = out.arc.t0 + setup.problem.grid.horizon();
  out.errors = mean_errors(from_state_vec(out.arc.states.back(), t_end), phase.target_a, phase.target_i, consts);
  return out;
}

RefinedTour refine_tour(const Tour& tour, const MissionScenario& scenario, const RefineOptions& opts,
                        const PhysicalConstants& consts) {
  if (opts.arcs_per_problem != 1) throw InvalidArgument("only one thrust phase per problem is supported");
  if (!tour.feasible) throw InvalidArgument("refinement needs a feasible tour");
  TourOptions topts = opts.tour;
  topts.build_burn_plans = true;
  topts.fuel_only = false;
  const Tour full = tour_cost(scenario, tour.order, consts, topts);

  struct Job {
    int leg;
    int bundle;
    const ThrustPhase* phase;
    BurnPlan plan;
  };
  std::vector<Job> jobs;
  for (std::size_t l = 0; l < full.legs.size(); ++l) {
    const TourLeg& leg = full.legs[l];
    for (const ThrustPhase& ph : leg.phases) {
      if (ph.last_impulse <= ph.first_impulse) continue;
      jobs.push_back({static_cast<int>(l), leg.bundle, &ph, sub_plan(leg.plan, ph.first_impulse, ph.last_impulse)});
    }
  }

  RefinedTour out;
  out.arcs.resize(jobs.size());
  const ThrusterSpec& th = scenario.spacecraft.thruster;
  parallel_for(static_cast<int>(jobs.size()), opts.jobs, [&](int j) {
    RefinedLeg r = refine_phase(*jobs[j].phase, jobs[j].plan, th, opts, consts);
    r.leg = jobs[j].leg;
    r.bundle = jobs[j].bundle;
    out.arcs[j] = std::move(r);
  });
  for (const RefinedLeg& r : out.arcs) {
    out.dv_total += r.arc.dv_total;
    out.fuel_total += r.arc.fuel;
    out.dv_estimate += r.dv_estimate;
    out.fuel_estimate += r.fuel_estimate;
    out.all_converged = out.all_converged && r.arc.converged;
  }
  return out;
}

}  // namespace orbitour
