#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "manifest.hpp"
#include "orbitour/errors.hpp"
#include "orbitour/json_io.hpp"
#include "orbitour/mission_analysis.hpp"
#include "orbitour/optimizer.hpp"
#include "orbitour/refine.hpp"
#include "orbitour/scenario.hpp"
#include "orbitour/tour.hpp"
#include "orbitour/verify.hpp"

namespace orbitour::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void note(const GlobalOptions& g, const std::string& msg) {
  if (!g.quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void emit(RunManifest& m, const std::string& path, const std::string& content) {
  ensure_parent(path);
  write_text_file(path, content);
  m.add_output(path, content);
}

RunManifest start_manifest(const char* command, const GlobalOptions& g) {
  RunManifest m;
  m.command = command;
  m.argv = g.argv;
  if (!g.constants_path.empty()) m.add_input(g.constants_path);
  return m;
}

void finish_manifest(RunManifest& m, const std::string& path, const Timer& t, int code) {
  m.wall_time_s = t.seconds();
  m.exit_code = code;
  ensure_parent(path);
  write_text_file(path, m.to_json());
}

std::string sibling(const std::string& out, const std::string& suffix) {
  fs::path p(out);
  return p.replace_extension().string() + suffix;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

ScenarioConfig load_scenario_config(const std::string& path, RunManifest& m) {
  if (path.empty()) return {};
  m.add_input(path);
  return scenario_config_from_json(read_text_file(path));
}

OptimizerConfig load_optimizer_config(const std::string& path, RunManifest& m) {
  if (path.empty()) return {};
  m.add_input(path);
  return optimizer_config_from_json(read_text_file(path));
}

}  // namespace

PhysicalConstants load_constants(const GlobalOptions& g) {
  if (g.constants_path.empty()) return {};
  return constants_from_json(read_text_file(g.constants_path));
}

int cmd_generate(const GenerateArgs& a, const GlobalOptions& g) {
  Timer timer;
  const PhysicalConstants consts = load_constants(g);
  RunManifest m = start_manifest("generate", g);
  const ScenarioConfig cfg = load_scenario_config(a.config, m);
  if (a.count < 1) throw InvalidArgument("--count must be at least 1");
  m.config_snapshot = scenario_config_to_json(cfg);
  m.seeds.push_back({"seed", a.seed});

  if (a.count == 1) {
    const MissionScenario sc = sample_scenario(cfg, a.seed, consts);
    emit(m, a.out, scenario_to_json(sc));
    note(g, "generated " + std::to_string(sc.bundles.size()) + " bundles -> " + a.out);
    finish_manifest(m, manifest_path_for(a.out), timer, kSuccess);
    return kSuccess;
  }
  fs::create_directories(a.out);
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t s = derive_seed(a.seed, static_cast<std::uint64_t>(i));
    char name[32];
    std::snprintf(name, sizeof name, "scenario_%04d.json", i);
    emit(m, (fs::path(a.out) / name).string(), scenario_to_json(sample_scenario(cfg, s, consts)));
  }
  note(g, "generated " + std::to_string(a.count) + " scenarios -> " + a.out);
  finish_manifest(m, (fs::path(a.out) / "manifest.json").string(), timer, kSuccess);
  return kSuccess;
}

int cmd_solve(const SolveArgs& a, const GlobalOptions& g) {
  Timer timer;
  const PhysicalConstants consts = load_constants(g);
  RunManifest m = start_manifest("solve", g);
  m.add_input(a.scenario);
  const MissionScenario sc = scenario_from_json(read_text_file(a.scenario));
  OptimizerConfig cfg = load_optimizer_config(a.optimizer_config, m);
  if (a.seed) cfg.seed = *a.seed;
  cfg.jobs = g.jobs;
  m.config_snapshot = optimizer_config_to_json(cfg);
  m.seeds.push_back({"optimizer", cfg.seed});

  std::vector<Permutation> seeds;
  for (const std::string& s : a.seed_tours) {
    if (s == "walks") {
      auto w = heuristic_walks(sc);
      seeds.insert(seeds.end(), w.begin(), w.end());
    } else {
      m.add_input(s);
      const Permutation p = tour_order_from_json(read_text_file(s));
      if (p.size() != sc.bundles.size()) throw SchemaError("seed tour '" + s + "' has the wrong length");
      seeds.push_back(p);
    }
  }

  OptimizeResult res;
  if (a.exact) {
    res.best = brute_force(sc, 9, consts, cfg.tour);
  } else {
    res = optimize(sc, cfg, seeds, consts);
  }
  std::string order;
  for (int b : res.best.order) order += (order.empty() ? "" : " ") + std::to_string(b);
  note(g, "best tour [" + order + "] fuel " + fixed(res.best.fuel_total, 3) + " kg, dv " +
              fixed(res.best.dv_total * 1e3, 2) + " m/s" + (res.best.feasible ? "" : " (INFEASIBLE)"));

  emit(m, a.out, tour_to_json(res.best, cfg.tour));
  emit(m, a.trace.empty() ? sibling(a.out, "_trace.csv") : a.trace, trace_to_csv(res.trace));
  const int code = res.best.feasible ? kSuccess : kInfeasible;
  finish_manifest(m, manifest_path_for(a.out), timer, code);
  return code;
}

int cmd_refine(const RefineArgs& a, const GlobalOptions& g) {
  Timer timer;
  const PhysicalConstants consts = load_constants(g);
  RunManifest m = start_manifest("refine", g);
  m.add_input(a.scenario);
  m.add_input(a.tour);
  const MissionScenario sc = scenario_from_json(read_text_file(a.scenario));
  const std::string tour_text = read_text_file(a.tour);
  const Permutation order = tour_order_from_json(tour_text);
  RefineOptions opts;
  opts.tour = tour_options_from_json(tour_text);
  opts.jobs = g.jobs;
  const Tour tour = tour_cost(sc, order, consts, opts.tour);
  if (!tour.feasible) throw InvalidArgument("tour exceeds the fuel budget; nothing to refine");

  const RefinedTour rt = refine_tour(tour, sc, opts, consts);
  for (const RefinedLeg& r : rt.arcs) {
    note(g, "leg " + std::to_string(r.leg) + " " + r.kind + ": dv " + fixed(r.arc.dv_total * 1e3, 3) + " m/s (est " +
                fixed(r.dv_estimate * 1e3, 3) + "), da " + fixed(r.errors.da_km, 3) + " km, di " +
                fixed(r.errors.di_deg, 4) + " deg" + (r.arc.converged ? "" : "  NOT CONVERGED"));
    for (const std::string& w : r.arc.warnings) note(g, "  warning: " + w);
  }
  emit(m, a.out, refined_tour_to_json(rt));
  const int code = rt.all_converged ? kSuccess : kPartialRefinement;
  finish_manifest(m, manifest_path_for(a.out), timer, code);
  return code;
}

int cmd_verify(const VerifyArgs& a, const GlobalOptions& g) {
  Timer timer;
  const PhysicalConstants consts = load_constants(g);
  RunManifest m = start_manifest("verify", g);
  m.add_input(a.arcs);
  if (!a.tour.empty()) m.add_input(a.tour);
  if (!a.scenario.empty()) m.add_input(a.scenario);
  const RefinedTour rt = refined_tour_from_json(read_text_file(a.arcs));
  const VerificationReport rep = verify_trajectory(rt, Tolerances{}, PropagatorConfig{}, consts);
  for (const ArcVerification& v : rep.arcs)
    note(g, "leg " + std::to_string(v.leg) + " " + v.kind + ": da " + fixed(v.errors.da_km, 3) + " km, di " +
                fixed(v.errors.di_deg, 4) + " deg, fuel " + fixed(v.fuel_numeric, 3) + "/" +
                fixed(v.fuel_analytic, 3) + " kg " + (v.pass ? "PASS" : "FAIL"));
  emit(m, a.out, report_to_json(rep));
  emit(m, a.csv.empty() ? sibling(a.out, ".csv") : a.csv, report_to_csv(rep));
  finish_manifest(m, manifest_path_for(a.out), timer, kSuccess);
  return kSuccess;
}

int cmd_montecarlo(const MonteCarloArgs& a, const GlobalOptions& g) {
  Timer timer;
  const PhysicalConstants consts = load_constants(g);
  RunManifest m = start_manifest("montecarlo", g);
  MonteCarloConfig mc;
  mc.scenario = load_scenario_config(a.config, m);
  mc.optimizer = load_optimizer_config(a.optimizer_config, m);
  mc.n = a.n;
  mc.seed = a.seed;
  mc.jobs = g.jobs;
  mc.seed_with_walks = a.walks;
  if (mc.n < 1) throw InvalidArgument("--n must be at least 1");
  m.config_snapshot = ordered_json{{"scenario", ordered_json::parse(scenario_config_to_json(mc.scenario))},
                                   {"optimizer", ordered_json::parse(optimizer_config_to_json(mc.optimizer))},
                                   {"n", mc.n},
                                   {"walks", mc.seed_with_walks}}
                          .dump();
  m.seeds.push_back({"seed", mc.seed});

  const MonteCarloSummary s = run_monte_carlo(mc, consts, [&](const ScenarioRecord& r) {
    if (!r.ok) note(g, "scenario " + std::to_string(r.index) + " failed: " + r.error);
  });
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  emit(m, (dir / "scenarios.csv").string(), monte_carlo_to_csv(s));
  emit(m, (dir / "by_bundles.csv").string(), bundle_summary_to_csv(s));
  emit(m, (dir / "summary.json").string(), monte_carlo_summary_to_json(s));
  if (a.save_scenarios) {
    for (const ScenarioRecord& r : s.records) {
      char name[40];
      std::snprintf(name, sizeof name, "scenarios/scenario_%04d.json", r.index);
      emit(m, (dir / name).string(), scenario_to_json(sample_scenario(mc.scenario, r.seed, consts)));
    }
  }
  note(g, std::to_string(s.completed) + "/" + std::to_string(mc.n) + " scenarios, mean fuel " +
              fixed(s.fuel_mean, 3) + " kg, feasible fraction " + fixed(s.feasible_fraction, 3));
  const int code = s.completed == 0 ? kError : kSuccess;
  finish_manifest(m, (dir / "manifest.json").string(), timer, code);
  return code;
}

int cmd_report(const ReportArgs& a, const GlobalOptions& g) {
  Timer timer;
  RunManifest m = start_manifest("report", g);
  std::ostringstream os;
  auto load = [&](const std::string& path) {
    m.add_input(path);
    return ordered_json::parse(read_text_file(path));
  };

  if (!a.scenario.empty()) {
    const MissionScenario sc = scenario_from_json(read_text_file(a.scenario));
    m.add_input(a.scenario);
    os << "# Scenario\n\n"
       << "seed " << sc.seed << ", " << sc.bundles.size() << " bundles, payload " << fixed(sc.payload_mass(), 2)
       << " kg, fuel budget " << fixed(sc.spacecraft.fuel_mass, 2) << " kg\n\n"
       << "| bundle | a [km] | i [deg] | RAAN [deg] | payloads | mass [kg] |\n|---|---|---|---|---|---|\n";
    for (std::size_t b = 0; b < sc.bundles.size(); ++b) {
      const Bundle& bu = sc.bundles[b];
      os << "| " << b << " | " << fixed(bu.target.a_km, 1) << " | " << fixed(bu.target.i_deg, 3) << " | "
         << fixed(bu.target.raan_deg, 2) << " | " << bu.payloads.size() << " | " << fixed(bu.mass(), 2) << " |\n";
    }
    os << "\n";
  }
  if (!a.tour.empty()) {
    const ordered_json t = load(a.tour);
    os << "# Tour\n\norder " << t.at("order").dump() << ", fuel " << fixed(t.at("totals").at("fuel_kg"), 3)
       << " kg, dv " << fixed(t.at("totals").at("dv_mps"), 2) << " m/s, tof "
       << fixed(t.at("totals").at("tof_s").get<double>() / 86400.0, 2) << " d, "
       << (t.at("feasible").get<bool>() ? "feasible" : "INFEASIBLE") << "\n\n"
       << "| leg | target | dv [m/s] | fuel [kg] | burns | tof [d] |\n|---|---|---|---|---|---|\n";
    int i = 0;
    for (const auto& leg : t.at("legs"))
      os << "| " << i++ << " | " << leg.at("label").get<std::string>() << " | " << fixed(leg.at("dv_mps"), 2) << " | "
         << fixed(leg.at("fuel_kg"), 3) << " | " << leg.at("burns").get<int>() << " | "
         << fixed(leg.at("tof_s").get<double>() / 86400.0, 2) << " |\n";
    os << "\n";
  }
  if (!a.arcs.empty()) {
    const ordered_json r = load(a.arcs);
    os << "# Refined arcs\n\n"
       << "| leg | kind | stages | dv [m/s] | estimate [m/s] | da [km] | di [deg] | converged |\n"
       << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& arc : r.at("arcs"))
      os << "| " << arc.at("leg").get<int>() << " | " << arc.at("kind").get<std::string>() << " | "
         << arc.at("n_stages").get<int>() << " | " << fixed(arc.at("dv_mps"), 3) << " | "
         << fixed(arc.at("dv_estimate_mps"), 3) << " | " << fixed(arc.at("terminal_error").at("da_km"), 3) << " | "
         << fixed(arc.at("terminal_error").at("di_deg"), 4) << " | "
         << (arc.at("converged").get<bool>() ? "yes" : "no") << " |\n";
    os << "\n";
  }
  if (!a.verification.empty()) {
    const ordered_json v = load(a.verification);
    os << "# Verification\n\n"
       << "| leg | kind | da [km] | di [deg] | fuel numeric [kg] | fuel analytic [kg] | injection | fuel |\n"
       << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& arc : v.at("arcs"))
      os << "| " << arc.at("leg").get<int>() << " | " << arc.at("kind").get<std::string>() << " | "
         << fixed(arc.at("delta").at("a_km"), 3) << " | " << fixed(arc.at("delta").at("i_deg"), 4) << " | "
         << fixed(arc.at("fuel_numeric_kg"), 3) << " | " << fixed(arc.at("fuel_analytic_kg"), 3) << " | "
         << (arc.at("pass").get<bool>() ? "pass" : "FAIL") << " | " << (arc.at("pass_fuel").get<bool>() ? "pass" : "FAIL")
         << " |\n";
    os << "\nall injections pass: " << (v.at("all_pass").get<bool>() ? "yes" : "no") << "\n";
  }
  if (a.out.empty()) {
    std::fputs(os.str().c_str(), stdout);
    return kSuccess;
  }
  emit(m, a.out, os.str());
  finish_manifest(m, manifest_path_for(a.out), timer, kSuccess);
  return kSuccess;
}

}  // namespace orbitour::cli
