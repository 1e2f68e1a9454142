#include <filesystem>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "manifest.hpp"
#include "orbitour/errors.hpp"
#include "orbitour/json_io.hpp"

using namespace orbitour;
using namespace orbitour::cli;
namespace fs = std::filesystem;

namespace {

const std::string kData = ORBITOUR_TEST_DATA;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

GlobalOptions quiet(int jobs = 1) {
  GlobalOptions g;
  g.jobs = jobs;
  g.quiet = true;
  return g;
}

}  // namespace

TEST_CASE("sha1 digests") {
  CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
  CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
}

TEST_CASE("generate is reproducible and counts scenarios") {
  TempDir dir("orbitour_cli_gen");
  GenerateArgs a;
  a.seed = 11;
  a.out = dir / "a.json";
  CHECK(cmd_generate(a, quiet()) == kSuccess);
  a.out = dir / "b.json";
  CHECK(cmd_generate(a, quiet()) == kSuccess);
  CHECK(read_text_file(dir / "a.json") == read_text_file(dir / "b.json"));
  CHECK(fs::exists(dir / "a.manifest.json"));
  a.count = 5;
  a.out = dir / "batch";
  CHECK(cmd_generate(a, quiet()) == kSuccess);
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir / "batch")) n += e.path().filename().string().rfind("scenario_", 0) == 0;
  CHECK(n == 5);
  const auto manifest = nlohmann::json::parse(read_text_file(dir / "batch/manifest.json"));
  CHECK(manifest.at("outputs").size() == 5);
  CHECK(manifest.at("seeds").at("seed") == 11);
}

TEST_CASE("pipeline on the small fixture") {
  TempDir dir("orbitour_cli_pipe");
  SolveArgs s;
  s.scenario = kData + "/tiny_scenario.json";
  s.optimizer_config = kData + "/tiny_optimizer.json";
  s.seed_tours = {"walks"};
  s.out = dir / "tour.json";
  CHECK(cmd_solve(s, quiet(2)) == kSuccess);
  CHECK(fs::exists(dir / "tour_trace.csv"));
  s.exact = true;
  s.out = dir / "tour_exact.json";
  CHECK(cmd_solve(s, quiet()) == kSuccess);
  CHECK(tour_order_from_json(read_text_file(dir / "tour.json")) ==
        tour_order_from_json(read_text_file(dir / "tour_exact.json")));

  RefineArgs r{dir / "tour.json", s.scenario, dir / "arcs.json"};
  CHECK(cmd_refine(r, quiet(2)) == kSuccess);
  VerifyArgs v;
  v.arcs = dir / "arcs.json";
  v.out = dir / "report.json";
  CHECK(cmd_verify(v, quiet()) == kSuccess);
  const auto rep = nlohmann::json::parse(read_text_file(dir / "report.json"));
  CHECK(rep.at("all_pass") == true);
  CHECK(fs::exists(dir / "report.csv"));

  ReportArgs rp;
  rp.scenario = s.scenario;
  rp.tour = dir / "tour.json";
  rp.arcs = dir / "arcs.json";
  rp.verification = dir / "report.json";
  rp.out = dir / "summary.md";
  CHECK(cmd_report(rp, quiet()) == kSuccess);
  CHECK(read_text_file(dir / "summary.md").find("# Verification") != std::string::npos);
}

TEST_CASE("infeasible tours exit with code 2") {
  TempDir dir("orbitour_cli_infeasible");
  MissionScenario sc = scenario_from_json(read_text_file(kData + "/tiny_scenario.json"));
  sc.spacecraft.fuel_mass = 0.01;
  write_text_file(dir / "sc.json", scenario_to_json(sc));
  SolveArgs s;
  s.scenario = dir / "sc.json";
  s.exact = true;
  s.out = dir / "tour.json";
  CHECK(cmd_solve(s, quiet()) == kInfeasible);
  CHECK(tour_order_from_json(read_text_file(dir / "tour.json")).size() == 2);
  RefineArgs r{dir / "tour.json", dir / "sc.json", dir / "arcs.json"};
  CHECK_THROWS_AS(cmd_refine(r, quiet()), InvalidArgument);
}

TEST_CASE("constants file and schema errors") {
  TempDir dir("orbitour_cli_consts");
  write_text_file(dir / "c.json", R"({"j2": 0.0})");
  GlobalOptions g = quiet();
  g.constants_path = dir / "c.json";
  CHECK(load_constants(g).j2 == 0.0);
  SolveArgs s;
  s.scenario = kData + "/bad_scenario.json";
  s.out = dir / "t.json";
  CHECK_THROWS_AS(cmd_solve(s, quiet()), SchemaError);
}

TEST_CASE("monte carlo writes its tables") {
  TempDir dir("orbitour_cli_mc");
  write_text_file(dir / "opt.json", read_text_file(kData + "/tiny_optimizer.json"));
  MonteCarloArgs m;
  m.optimizer_config = dir / "opt.json";
  m.n = 6;
  m.seed = 2;
  m.out_dir = dir / "mc";
  m.save_scenarios = true;
  CHECK(cmd_montecarlo(m, quiet(2)) == kSuccess);
  for (const char* f : {"scenarios.csv", "by_bundles.csv", "summary.json", "manifest.json", "scenarios/scenario_0005.json"})
    CHECK(fs::exists(fs::path(m.out_dir) / f));
  const std::string first = read_text_file(dir / "mc/scenarios.csv");
  m.out_dir = dir / "mc2";
  CHECK(cmd_montecarlo(m, quiet(1)) == kSuccess);
  CHECK(read_text_file(dir / "mc2/scenarios.csv") == first);
}
