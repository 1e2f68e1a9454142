#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitour/constants.hpp"

namespace orbitour::cli {

enum ExitCode : int { kSuccess = 0, kError = 1, kInfeasible = 2, kPartialRefinement = 3 };

struct GlobalOptions {
  int jobs = 1;
  std::string constants_path;  // empty: built-in values
  std::vector<std::string> argv;
  bool quiet = false;
};

struct GenerateArgs {
  std::string config;
  std::uint64_t seed = 0;
  int count = 1;
  std::string out;  // file when count == 1, directory otherwise
};

struct SolveArgs {
  std::string scenario;
  std::string optimizer_config;
  std::vector<std::string> seed_tours;  // tour files, or "walks"
  bool exact = false;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string trace;  // defaults next to --out
};

struct RefineArgs {
  std::string tour;
  std::string scenario;
  std::string out;
};

struct VerifyArgs {
  std::string arcs;
  std::string tour;      // optional, recorded in the manifest
  std::string scenario;  // optional, recorded in the manifest
  std::string out;
  std::string csv;  // defaults next to --out
};

struct MonteCarloArgs {
  std::string config;
  std::string optimizer_config;
  int n = 100;
  std::uint64_t seed = 1;
  std::string out_dir;
  bool walks = true;
  bool save_scenarios = false;
};

struct ReportArgs {
  std::string scenario;
  std::string tour;
  std::string arcs;
  std::string verification;
  std::string out;  // empty: stdout
};

PhysicalConstants load_constants(const GlobalOptions& g);

int cmd_generate(const GenerateArgs& a, const GlobalOptions& g);
int cmd_solve(const SolveArgs& a, const GlobalOptions& g);
int cmd_refine(const RefineArgs& a, const GlobalOptions& g);
int cmd_verify(const VerifyArgs& a, const GlobalOptions& g);
int cmd_montecarlo(const MonteCarloArgs& a, const GlobalOptions& g);
int cmd_report(const ReportArgs& a, const GlobalOptions& g);

}  // namespace orbitour::cli
