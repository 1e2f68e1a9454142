#pragma once

#include <string>

#include "orbitour/constants.hpp"
#include "orbitour/mission_analysis.hpp"
#include "orbitour/optimizer.hpp"
#include "orbitour/refine.hpp"
#include "orbitour/scenario.hpp"
#include "orbitour/tour.hpp"
#include "orbitour/verify.hpp"

// Text (de)serialization of the pipeline artifacts. JSON output is deterministic: fixed key
// order, shortest round-trip doubles, two-space indentation. Readers raise SchemaError.
namespace orbitour {

inline constexpr int kSchemaVersion = 1;

std::string constants_to_json(const PhysicalConstants& c);
// Overrides the given keys on top of `base`.
PhysicalConstants constants_from_json(const std::string& text, const PhysicalConstants& base = {});

std::string scenario_config_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_config_from_json(const std::string& text);

std::string optimizer_config_to_json(const OptimizerConfig& cfg);
OptimizerConfig optimizer_config_from_json(const std::string& text);

std::string scenario_to_json(const MissionScenario& sc);
MissionScenario scenario_from_json(const std::string& text);

std::string tour_to_json(const Tour& tour, const TourOptions& opts = {});
// Reads back the visiting order; costs are recomputed from the scenario.
Permutation tour_order_from_json(const std::string& text);
TourOptions tour_options_from_json(const std::string& text);

std::string trace_to_csv(const EvolutionTrace& trace);

std::string refined_tour_to_json(const RefinedTour& refined);
RefinedTour refined_tour_from_json(const std::string& text);

std::string report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

std::string monte_carlo_to_csv(const MonteCarloSummary& summary);
std::string bundle_summary_to_csv(const MonteCarloSummary& summary);
std::string monte_carlo_summary_to_json(const MonteCarloSummary& summary);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace orbitour
