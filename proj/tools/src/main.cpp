#include <cstdio>
#include <cstdlib>

#include "CLI11.hpp"
#include "commands.hpp"
#include "orbitour/errors.hpp"
#include "orbitour/parallel.hpp"

using namespace orbitour::cli;

int main(int argc, char** argv) {
  CLI::App app{"orbitour: multi-target low-thrust tour planning"};
  app.require_subcommand(1);

  GlobalOptions g;
  g.jobs = orbitour::default_jobs();
  for (int i = 0; i < argc; ++i) g.argv.emplace_back(argv[i]);
  if (const char* env = std::getenv("ORBITOUR_CONSTANTS")) g.constants_path = env;
  app.add_option("--jobs,-j", g.jobs, "worker threads for islands, arcs and scenarios")->check(CLI::PositiveNumber);
  app.add_option("--constants", g.constants_path, "physical constants JSON (overrides $ORBITOUR_CONSTANTS)")
      ->check(CLI::ExistingFile);
  app.add_flag("--quiet,-q", g.quiet, "suppress progress output");

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "sample random mission scenarios");
  c_gen->add_option("--config", gen.config, "scenario config JSON")->check(CLI::ExistingFile);
  c_gen->add_option("--seed", gen.seed, "base seed");
  c_gen->add_option("--count", gen.count, "number of scenarios; >1 writes a directory");
  c_gen->add_option("--out,-o", gen.out, "output file or directory")->required();

  SolveArgs solve;
  std::uint64_t solve_seed = 0;
  auto* c_solve = app.add_subcommand("solve", "optimize the bundle visiting order");
  c_solve->add_option("--scenario", solve.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
  c_solve->add_option("--optimizer-config", solve.optimizer_config, "optimizer config JSON")
      ->check(CLI::ExistingFile);
  c_solve->add_option("--seed-tours,--seed-candidates", solve.seed_tours,
                      "candidate tours: tour JSON files, or 'walks' for the heuristic walks");
  c_solve->add_flag("--exact", solve.exact, "enumerate all orders (n <= 9)");
  auto* o_seed = c_solve->add_option("--seed", solve_seed, "optimizer seed (overrides the config)");
  c_solve->add_option("--out,-o", solve.out, "tour JSON")->required();
  c_solve->add_option("--trace", solve.trace, "per-generation trace CSV");

  RefineArgs refine;
  auto* c_refine = app.add_subcommand("refine", "refine the thrust arcs of a tour");
  c_refine->add_option("--tour", refine.tour, "tour JSON")->required()->check(CLI::ExistingFile);
  c_refine->add_option("--scenario", refine.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
  c_refine->add_option("--out,-o", refine.out, "refined arcs JSON")->required();

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "re-propagate refined arcs and check injection accuracy");
  c_verify->add_option("--arcs", verify.arcs, "refined arcs JSON")->required()->check(CLI::ExistingFile);
  c_verify->add_option("--tour", verify.tour, "tour JSON")->check(CLI::ExistingFile);
  c_verify->add_option("--scenario", verify.scenario, "scenario JSON")->check(CLI::ExistingFile);
  c_verify->add_option("--out,-o", verify.out, "report JSON")->required();
  c_verify->add_option("--csv", verify.csv, "report CSV");

  MonteCarloArgs mc;
  bool no_walks = false;
  auto* c_mc = app.add_subcommand("montecarlo", "generate and solve many scenarios");
  c_mc->add_option("--config", mc.config, "scenario config JSON")->check(CLI::ExistingFile);
  c_mc->add_option("--optimizer-config", mc.optimizer_config, "optimizer config JSON")->check(CLI::ExistingFile);
  c_mc->add_option("--n", mc.n, "number of scenarios");
  c_mc->add_option("--seed", mc.seed, "base seed");
  c_mc->add_option("--out-dir", mc.out_dir, "output directory")->required();
  c_mc->add_flag("--no-walks", no_walks, "do not seed the optimizer with heuristic walks");
  c_mc->add_flag("--save-scenarios", mc.save_scenarios, "write every sampled scenario");

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "render artifacts as a markdown summary");
  c_report->add_option("--scenario", report.scenario, "scenario JSON")->check(CLI::ExistingFile);
  c_report->add_option("--tour", report.tour, "tour JSON")->check(CLI::ExistingFile);
  c_report->add_option("--arcs", report.arcs, "refined arcs JSON")->check(CLI::ExistingFile);
  c_report->add_option("--verification", report.verification, "verification report JSON")
      ->check(CLI::ExistingFile);
  c_report->add_option("--out,-o", report.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kSuccess : kError;
  }
  if (o_seed->count() > 0) solve.seed = solve_seed;
  mc.walks = !no_walks;

  try {
    if (*c_gen) return cmd_generate(gen, g);
    if (*c_solve) return cmd_solve(solve, g);
    if (*c_refine) return cmd_refine(refine, g);
    if (*c_verify) return cmd_verify(verify, g);
    if (*c_mc) return cmd_montecarlo(mc, g);
    if (*c_report) return cmd_report(report, g);
  } catch (const orbitour::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
  return kError;
}
