#include "orbitour/json_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "orbitour/errors.hpp"

namespace orbitour {

using json = nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + " must be a JSON object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const char* what) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(std::string("unknown key '") + it.key() + "' in " + what);
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <class T>
T need(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void check_version(const json& j) {
  if (j.contains("version") && j.at("version") != kSchemaVersion)
    throw SchemaError("unsupported schema version " + j.at("version").dump());
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json orbit_json(const OrbitSpec& o) {
  return json{{"a_km", o.a_km},         {"e", o.e},
              {"i_deg", o.i_deg},       {"raan_deg", o.raan_deg},
              {"argp_deg", o.argp_deg}, {"ta_deg", o.ta_deg}};
}

OrbitSpec orbit_from(const json& j, OrbitSpec o = {}) {
  require_object(j, "orbit");
  reject_unknown(j, {"a_km", "e", "i_deg", "raan_deg", "argp_deg", "ta_deg"}, "orbit");
  read(j, "a_km", o.a_km);
  read(j, "e", o.e);
  read(j, "i_deg", o.i_deg);
  read(j, "raan_deg", o.raan_deg);
  read(j, "argp_deg", o.argp_deg);
  read(j, "ta_deg", o.ta_deg);
  return o;
}

json thruster_json(const ThrusterSpec& t) {
  return json{{"thrust_n", t.thrust},       {"cluster", t.cluster},         {"isp_s", t.isp},
              {"t_on_s", t.t_on},           {"t_cooldown_s", t.t_cooldown}, {"min_impulse_bit_ns", t.min_impulse_bit}};
}

ThrusterSpec thruster_from(const json& j, ThrusterSpec t = {}) {
  require_object(j, "thruster");
  reject_unknown(j, {"thrust_n", "cluster", "isp_s", "t_on_s", "t_cooldown_s", "min_impulse_bit_ns"}, "thruster");
  read(j, "thrust_n", t.thrust);
  read(j, "cluster", t.cluster);
  read(j, "isp_s", t.isp);
  read(j, "t_on_s", t.t_on);
  read(j, "t_cooldown_s", t.t_cooldown);
  read(j, "min_impulse_bit_ns", t.min_impulse_bit);
  if (!(t.thrust > 0.0) || t.cluster < 1 || !(t.isp > 0.0) || !(t.t_on > 0.0) || t.t_cooldown < 0.0)
    throw SchemaError("thruster parameters out of range");
  return t;
}

json spacecraft_json(const SpacecraftSpec& s) {
  return json{{"wet_mass_kg", s.wet_mass},
              {"payload_mass_kg", s.payload_mass_total},
              {"fuel_mass_kg", s.fuel_mass},
              {"thruster", thruster_json(s.thruster)}};
}

SpacecraftSpec spacecraft_from(const json& j, SpacecraftSpec s = {}) {
  require_object(j, "spacecraft");
  reject_unknown(j, {"wet_mass_kg", "payload_mass_kg", "fuel_mass_kg", "thruster"}, "spacecraft");
  read(j, "wet_mass_kg", s.wet_mass);
  read(j, "payload_mass_kg", s.payload_mass_total);
  read(j, "fuel_mass_kg", s.fuel_mass);
  if (j.contains("thruster")) s.thruster = thruster_from(j.at("thruster"), s.thruster);
  if (!(s.dry_mass() > 0.0) || s.fuel_mass < 0.0) throw SchemaError("spacecraft masses out of range");
  return s;
}

const char* end_name(EndCondition e) {
  switch (e) {
    case EndCondition::Decommission: return "decommission";
    case EndCondition::ReturnToInsertion: return "return";
    case EndCondition::None: return "none";
  }
  return "none";
}

EndCondition end_from(const std::string& s) {
  if (s == "decommission") return EndCondition::Decommission;
  if (s == "return") return EndCondition::ReturnToInsertion;
  if (s == "none") return EndCondition::None;
  throw SchemaError("unknown end condition '" + s + "'");
}

json vec_json(const StateVec& x) {
  json a = json::array();
  for (int i = 0; i < 7; ++i) a.push_back(x[i]);
  return a;
}

json vec3_json(const Eigen::Vector3d& u) { return json::array({u[0], u[1], u[2]}); }

}  // namespace

std::string constants_to_json(const PhysicalConstants& c) {
  return dump(json{{"mu_km3_s2", c.mu}, {"re_km", c.re}, {"j2", c.j2}, {"g0_km_s2", c.g0}});
}

PhysicalConstants constants_from_json(const std::string& text, const PhysicalConstants& base) {
  const json j = parse(text);
  require_object(j, "constants");
  reject_unknown(j, {"mu_km3_s2", "re_km", "j2", "g0_km_s2"}, "constants");
  PhysicalConstants c = base;
  read(j, "mu_km3_s2", c.mu);
  read(j, "re_km", c.re);
  read(j, "j2", c.j2);
  read(j, "g0_km_s2", c.g0);
  if (!(c.mu > 0.0) || !(c.re > 0.0) || !(c.g0 > 0.0)) throw SchemaError("constants out of range");
  return c;
}

std::string scenario_config_to_json(const ScenarioConfig& c) {
  json j{{"version", kSchemaVersion},
         {"spacecraft", spacecraft_json(c.spacecraft)},
         {"inventory", {{"cubesats", c.inventory.cubesats},
                        {"pocketqubes", c.inventory.pocketqubes},
                        {"smallsats", c.inventory.smallsats}}},
         {"insertion", orbit_json(c.insertion)},
         {"decommission_alt_km", c.decommission_alt_km},
         {"nominal_alt_km", c.nominal_alt_km},
         {"alt_spread_km", c.alt_spread_km},
         {"raan_nominal_deg", c.raan_nominal_deg},
         {"argp_nominal_deg", c.argp_nominal_deg},
         {"ta_nominal_deg", c.ta_nominal_deg},
         {"angle_spread_deg", c.angle_spread_deg},
         {"mass_spread", c.mass_spread},
         {"min_bundles", c.min_bundles}};
  j["max_bundles"] = c.max_bundles ? json(*c.max_bundles) : json(nullptr);
  j["fixed_bundles"] = c.fixed_bundles ? json(*c.fixed_bundles) : json(nullptr);
  return dump(j);
}

ScenarioConfig scenario_config_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j, "scenario config");
  check_version(j);
  reject_unknown(j,
                 {"version", "spacecraft", "inventory", "insertion", "decommission_alt_km", "nominal_alt_km",
                  "alt_spread_km", "raan_nominal_deg", "argp_nominal_deg", "ta_nominal_deg", "angle_spread_deg",
                  "mass_spread", "min_bundles", "max_bundles", "fixed_bundles"},
                 "scenario config");
  ScenarioConfig c;
  if (j.contains("spacecraft")) c.spacecraft = spacecraft_from(j.at("spacecraft"));
  if (j.contains("inventory")) {
    const json& inv = j.at("inventory");
    require_object(inv, "inventory");
    reject_unknown(inv, {"cubesats", "pocketqubes", "smallsats"}, "inventory");
    read(inv, "cubesats", c.inventory.cubesats);
    read(inv, "pocketqubes", c.inventory.pocketqubes);
    read(inv, "smallsats", c.inventory.smallsats);
  }
  if (j.contains("insertion")) c.insertion = orbit_from(j.at("insertion"), c.insertion);
  read(j, "decommission_alt_km", c.decommission_alt_km);
  read(j, "nominal_alt_km", c.nominal_alt_km);
  read(j, "alt_spread_km", c.alt_spread_km);
  read(j, "raan_nominal_deg", c.raan_nominal_deg);
  read(j, "argp_nominal_deg", c.argp_nominal_deg);
  read(j, "ta_nominal_deg", c.ta_nominal_deg);
  read(j, "angle_spread_deg", c.angle_spread_deg);
  read(j, "mass_spread", c.mass_spread);
  read(j, "min_bundles", c.min_bundles);
  if (j.contains("max_bundles") && !j.at("max_bundles").is_null()) c.max_bundles = need<int>(j, "max_bundles");
  if (j.contains("fixed_bundles") && !j.at("fixed_bundles").is_null())
    c.fixed_bundles = need<int>(j, "fixed_bundles");
  return c;
}

std::string optimizer_config_to_json(const OptimizerConfig& c) {
  json alg = json::array();
  for (IslandAlgorithm a : c.algorithms) alg.push_back(a == IslandAlgorithm::Genetic ? "genetic" : "swarm");
  json g{{"tournament", c.genetic.tournament},
         {"crossover_rate", c.genetic.crossover_rate},
         {"blend_alpha", c.genetic.blend_alpha},
         {"mutation_sigma", c.genetic.mutation_sigma},
         {"mutation_rate", c.genetic.mutation_rate ? json(*c.genetic.mutation_rate) : json(nullptr)},
         {"elites", c.genetic.elites}};
  json s{{"inertia", c.swarm.inertia},
         {"cognitive", c.swarm.cognitive},
         {"social", c.swarm.social},
         {"max_velocity", c.swarm.max_velocity}};
  json t{{"end", end_name(c.tour.end)}, {"penalty_factor", c.tour.penalty_factor}};
  return dump(json{{"version", kSchemaVersion},
                   {"islands", c.islands},
                   {"population", c.population},
                   {"generations", c.generations},
                   {"migration_interval", c.migration_interval},
                   {"migrants", c.migrants},
                   {"algorithms", alg},
                   {"seed", c.seed},
                   {"seeding_fraction", c.seeding_fraction},
                   {"mallows_theta", c.mallows_theta},
                   {"genetic", g},
                   {"swarm", s},
                   {"tour", t}});
}

OptimizerConfig optimizer_config_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j, "optimizer config");
  check_version(j);
  reject_unknown(j,
                 {"version", "islands", "population", "generations", "migration_interval", "migrants", "algorithms",
                  "seed", "seeding_fraction", "mallows_theta", "genetic", "swarm", "tour"},
                 "optimizer config");
  OptimizerConfig c;
  read(j, "islands", c.islands);
  read(j, "population", c.population);
  read(j, "generations", c.generations);
  read(j, "migration_interval", c.migration_interval);
  read(j, "migrants", c.migrants);
  read(j, "seed", c.seed);
  read(j, "seeding_fraction", c.seeding_fraction);
  read(j, "mallows_theta", c.mallows_theta);
  if (j.contains("algorithms")) {
    for (const auto& a : j.at("algorithms")) {
      const std::string s = a.get<std::string>();
      if (s == "genetic") c.algorithms.push_back(IslandAlgorithm::Genetic);
      else if (s == "swarm") c.algorithms.push_back(IslandAlgorithm::ParticleSwarm);
      else throw SchemaError("unknown island algorithm '" + s + "'");
    }
  }
  if (j.contains("genetic")) {
    const json& g = j.at("genetic");
    require_object(g, "genetic");
    reject_unknown(g, {"tournament", "crossover_rate", "blend_alpha", "mutation_sigma", "mutation_rate", "elites"},
                   "genetic");
    read(g, "tournament", c.genetic.tournament);
    read(g, "crossover_rate", c.genetic.crossover_rate);
    read(g, "blend_alpha", c.genetic.blend_alpha);
    read(g, "mutation_sigma", c.genetic.mutation_sigma);
    if (g.contains("mutation_rate") && !g.at("mutation_rate").is_null())
      c.genetic.mutation_rate = need<double>(g, "mutation_rate");
    read(g, "elites", c.genetic.elites);
  }
  if (j.contains("swarm")) {
    const json& s = j.at("swarm");
    require_object(s, "swarm");
    reject_unknown(s, {"inertia", "cognitive", "social", "max_velocity"}, "swarm");
    read(s, "inertia", c.swarm.inertia);
    read(s, "cognitive", c.swarm.cognitive);
    read(s, "social", c.swarm.social);
    read(s, "max_velocity", c.swarm.max_velocity);
  }
  if (j.contains("tour")) {
    const json& t = j.at("tour");
    require_object(t, "tour");
    reject_unknown(t, {"end", "penalty_factor"}, "tour");
    if (t.contains("end")) c.tour.end = end_from(need<std::string>(t, "end"));
    read(t, "penalty_factor", c.tour.penalty_factor);
  }
  if (c.islands < 1 || c.population < 2 || c.generations < 0 || c.migration_interval < 1 || c.migrants < 0)
    throw SchemaError("optimizer parameters out of range");
  return c;
}

std::string scenario_to_json(const MissionScenario& sc) {
  json bundles = json::array();
  for (const Bundle& b : sc.bundles) {
    json p = json::array();
    for (const PayloadSpec& ps : b.payloads) p.push_back({{"class", to_string(ps.cls)}, {"mass_kg", ps.mass}});
    bundles.push_back({{"target", orbit_json(b.target)}, {"payloads", p}});
  }
  return dump(json{{"version", kSchemaVersion},
                   {"seed", sc.seed},
                   {"epoch0_s", sc.epoch0},
                   {"spacecraft", spacecraft_json(sc.spacecraft)},
                   {"insertion", orbit_json(sc.insertion)},
                   {"decommission_alt_km", sc.decommission_alt_km},
                   {"bundles", bundles}});
}

MissionScenario scenario_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j, "scenario");
  check_version(j);
  reject_unknown(j, {"version", "seed", "epoch0_s", "spacecraft", "insertion", "decommission_alt_km", "bundles"},
                 "scenario");
  MissionScenario sc;
  read(j, "seed", sc.seed);
  read(j, "epoch0_s", sc.epoch0);
  if (j.contains("spacecraft")) sc.spacecraft = spacecraft_from(j.at("spacecraft"));
  sc.insertion = orbit_from(need<json>(j, "insertion"));
  read(j, "decommission_alt_km", sc.decommission_alt_km);
  const json bundles = need<json>(j, "bundles");
  if (!bundles.is_array() || bundles.empty()) throw SchemaError("scenario needs a non-empty bundle list");
  for (const json& b : bundles) {
    require_object(b, "bundle");
    reject_unknown(b, {"target", "payloads"}, "bundle");
    Bundle out;
    out.target = orbit_from(need<json>(b, "target"));
    for (const json& p : need<json>(b, "payloads")) {
      reject_unknown(p, {"class", "mass_kg"}, "payload");
      PayloadSpec ps;
      try {
        ps.cls = payload_class_from_string(need<std::string>(p, "class"));
      } catch (const InvalidArgument& e) {
        throw SchemaError(e.what());
      }
      ps.mass = need<double>(p, "mass_kg");
      if (!(ps.mass > 0.0)) throw SchemaError("payload mass must be positive");
      out.payloads.push_back(ps);
    }
    if (out.payloads.empty()) throw SchemaError("bundle without payloads");
    if (!(out.target.a_km > 6378.137)) throw SchemaError("bundle target below the Earth's surface");
    sc.bundles.push_back(std::move(out));
  }
  return sc;
}

std::string tour_to_json(const Tour& tour, const TourOptions& opts) {
  json legs = json::array();
  for (const TourLeg& leg : tour.legs) {
    json segs = json::array();
    int burns = 0;
    for (const LegEstimate& e : leg.estimate.dv_legs) {
      segs.push_back({{"label", e.label}, {"dv_mps", e.dv * 1e3}, {"fuel_kg", e.fuel}, {"burns", e.burns},
                      {"tof_s", e.tof}});
      burns += e.burns;
    }
    const std::string label = leg.bundle >= 0 ? "bundle_" + std::to_string(leg.bundle) : "end_of_mission";
    legs.push_back({{"label", label},
                    {"bundle", leg.bundle},
                    {"dv_mps", leg.estimate.dv_total * 1e3},
                    {"fuel_kg", leg.estimate.fuel_mass},
                    {"burns", burns},
                    {"tof_s", leg.estimate.tof_total},
                    {"phasing_coast_s", leg.estimate.phasing_coast},
                    {"payload_release_kg", leg.payload_release},
                    {"segments", segs}});
  }
  return dump(json{{"version", kSchemaVersion},
                   {"order", tour.order},
                   {"end", end_name(opts.end)},
                   {"penalty_factor", opts.penalty_factor},
                   {"legs", legs},
                   {"totals", {{"dv_mps", tour.dv_total * 1e3}, {"fuel_kg", tour.fuel_total}, {"tof_s", tour.tof_total}}},
                   {"cost", tour.cost},
                   {"feasible", tour.feasible}});
}

Permutation tour_order_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j, "tour");
  check_version(j);
  const Permutation order = need<Permutation>(j, "order");
  if (!is_permutation(order)) throw SchemaError("tour order is not a permutation");
  return order;
}

TourOptions tour_options_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j, "tour");
  TourOptions opts;
  if (j.contains("end")) opts.end = end_from(need<std::string>(j, "end"));
  read(j, "penalty_factor", opts.penalty_factor);
  return opts;
}

std::string trace_to_csv(const EvolutionTrace& trace) {
  std::ostringstream os;
  os << "generation,island,best_fuel_kg,mean_fuel_kg\n";
  for (const GenerationRecord& r : trace.records)
    os << r.generation << ',' << r.island << ',' << num(r.best) << ',' << num(r.mean) << '\n';
  return os.str();
}

std::string refined_tour_to_json(const RefinedTour& rt) {
  json arcs = json::array();
  for (const RefinedLeg& r : rt.arcs) {
    const RefinedArc& a = r.arc;
    json states = json::array(), controls = json::array(), durations = json::array(), tmax = json::array();
    for (const StateVec& x : a.states) states.push_back(vec_json(x));
    for (const Eigen::Vector3d& u : a.controls) controls.push_back(vec3_json(u));
    for (double d : a.durations) durations.push_back(d);
    for (double t : a.tmax) tmax.push_back(t);
    double step = 0.0;
    for (double d : a.durations) step = std::max(step, d);
    json warnings = a.warnings;
    arcs.push_back({{"leg", r.leg},
                    {"bundle", r.bundle},
                    {"kind", r.kind},
                    {"target_a_km", r.target_a},
                    {"target_i_deg", r.target_i * kRadToDeg},
                    {"target_i_rad", r.target_i},
                    {"dv_estimate_mps", r.dv_estimate * 1e3},
                    {"dv_estimate_kmps", r.dv_estimate},
                    {"fuel_estimate_kg", r.fuel_estimate},
                    {"n_stages", a.n_stages()},
                    {"step_s", step},
                    {"t0_s", a.t0},
                    {"isp_s", a.isp},
                    {"stage_durations_s", durations},
                    {"tmax_kN", tmax},
                    {"states", states},
                    {"controls_lvlh_kN", controls},
                    {"dv_mps", a.dv_total * 1e3},
                    {"dv_kmps", a.dv_total},
                    {"fuel_kg", a.fuel},
                    {"iterations", a.iterations},
                    {"converged", a.converged},
                    {"objective", a.objective},
                    {"terminal_error", {{"da_km", r.errors.da_km}, {"de", r.errors.de}, {"di_deg", r.errors.di_deg}}},
                    {"terminal_state_error", vec_json(a.terminal_error)},
                    {"warnings", warnings}});
  }
  return dump(json{{"version", kSchemaVersion},
                   {"arcs", arcs},
                   {"totals",
                    {{"dv_mps", rt.dv_total * 1e3},
                     {"fuel_kg", rt.fuel_total},
                     {"dv_estimate_mps", rt.dv_estimate * 1e3},
                     {"fuel_estimate_kg", rt.fuel_estimate}}},
                   {"all_converged", rt.all_converged}});
}

RefinedTour refined_tour_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j, "refined arcs");
  check_version(j);
  RefinedTour rt;
  for (const json& a : need<json>(j, "arcs")) {
    RefinedLeg r;
    r.leg = need<int>(a, "leg");
    r.bundle = need<int>(a, "bundle");
    r.kind = need<std::string>(a, "kind");
    r.target_a = need<double>(a, "target_a_km");
    // Exact internal units when present, display units otherwise.
    r.target_i = a.contains("target_i_rad") ? need<double>(a, "target_i_rad")
                                            : need<double>(a, "target_i_deg") * kDegToRad;
    r.dv_estimate = a.contains("dv_estimate_kmps") ? need<double>(a, "dv_estimate_kmps")
                                                   : need<double>(a, "dv_estimate_mps") * 1e-3;
    r.fuel_estimate = need<double>(a, "fuel_estimate_kg");
    RefinedArc& arc = r.arc;
    arc.t0 = need<double>(a, "t0_s");
    arc.isp = need<double>(a, "isp_s");
    arc.durations = need<std::vector<double>>(a, "stage_durations_s");
    arc.tmax = need<std::vector<double>>(a, "tmax_kN");
    const auto states = need<std::vector<std::vector<double>>>(a, "states");
    const auto controls = need<std::vector<std::vector<double>>>(a, "controls_lvlh_kN");
    const std::size_t n = arc.durations.size();
    if (states.size() != n + 1 || controls.size() != n || arc.tmax.size() != n)
      throw SchemaError("refined arc arrays have inconsistent lengths");
    for (const auto& s : states) {
      if (s.size() != 7) throw SchemaError("state rows need 7 entries");
      StateVec x;
      for (int i = 0; i < 7; ++i) x[i] = s[i];
      arc.states.push_back(x);
    }
    for (const auto& u : controls) {
      if (u.size() != 3) throw SchemaError("control rows need 3 entries");
      arc.controls.emplace_back(u[0], u[1], u[2]);
    }
    arc.dv_total = a.contains("dv_kmps") ? need<double>(a, "dv_kmps") : need<double>(a, "dv_mps") * 1e-3;
    arc.fuel = need<double>(a, "fuel_kg");
    arc.iterations = need<int>(a, "iterations");
    arc.converged = need<bool>(a, "converged");
    arc.objective = need<double>(a, "objective");
    const json te = need<json>(a, "terminal_error");
    r.errors = {need<double>(te, "da_km"), need<double>(te, "de"), need<double>(te, "di_deg")};
    const auto tse = need<std::vector<double>>(a, "terminal_state_error");
    if (tse.size() == 7)
      for (int i = 0; i < 7; ++i) arc.terminal_error[i] = tse[i];
    read(a, "warnings", arc.warnings);
    rt.dv_total += arc.dv_total;
    rt.fuel_total += arc.fuel;
    rt.dv_estimate += r.dv_estimate;
    rt.fuel_estimate += r.fuel_estimate;
    rt.all_converged = rt.all_converged && arc.converged;
    rt.arcs.push_back(std::move(r));
  }
  return rt;
}

std::string report_to_json(const VerificationReport& rep) {
  json arcs = json::array();
  for (const ArcVerification& v : rep.arcs) {
    arcs.push_back({{"leg", v.leg},
                    {"bundle", v.bundle},
                    {"kind", v.kind},
                    {"target", {{"a_km", v.target_a}, {"i_deg", v.target_i}}},
                    {"achieved", {{"a_km", v.achieved_a}, {"e", v.achieved_e}, {"i_deg", v.achieved_i}}},
                    {"delta", {{"a_km", v.errors.da_km}, {"e", v.errors.de}, {"i_deg", v.errors.di_deg}}},
                    {"fuel_numeric_kg", v.fuel_numeric},
                    {"fuel_analytic_kg", v.fuel_analytic},
                    {"dv_numeric_mps", v.dv_numeric * 1e3},
                    {"consistency", v.consistency},
                    {"pass_a", v.pass_a},
                    {"pass_i", v.pass_i},
                    {"pass_fuel", v.pass_fuel},
                    {"pass", v.pass}});
  }
  return dump(json{{"version", kSchemaVersion},
                   {"tolerances",
                    {{"da_km", rep.tolerances.da_km},
                     {"di_deg", rep.tolerances.di_deg},
                     {"fuel_rel", rep.tolerances.fuel_rel}}},
                   {"perturbations", {{"j2", true}, {"drag", false}, {"third_body", false}, {"srp", false}}},
                   {"arcs", arcs},
                   {"dv_total_mps", rep.dv_total * 1e3},
                   {"fuel_total_kg", rep.fuel_total},
                   {"all_pass", rep.all_pass},
                   {"all_fuel_pass", rep.all_fuel_pass}});
}

std::string report_to_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << "leg,bundle,kind,target_a_km,target_i_deg,achieved_a_km,achieved_e,achieved_i_deg,da_km,de,di_deg,"
        "pass_a,pass_i,pass,fuel_numeric_kg,fuel_analytic_kg,pass_fuel\n";
  for (const ArcVerification& v : rep.arcs)
    os << v.leg << ',' << v.bundle << ',' << v.kind << ',' << num(v.target_a) << ',' << num(v.target_i) << ','
       << num(v.achieved_a) << ',' << num(v.achieved_e) << ',' << num(v.achieved_i) << ',' << num(v.errors.da_km)
       << ',' << num(v.errors.de) << ',' << num(v.errors.di_deg) << ',' << v.pass_a << ',' << v.pass_i << ','
       << v.pass << ',' << num(v.fuel_numeric) << ',' << num(v.fuel_analytic) << ',' << v.pass_fuel << '\n';
  return os.str();
}

std::string monte_carlo_to_csv(const MonteCarloSummary& s) {
  std::ostringstream os;
  os << "index,seed,ok,bundles,fuel_kg,dv_mps,tof_s,feasible,min_payload_mass_kg,sma_std_km,sma_range_km,"
        "inc_std_deg,inc_range_deg,error\n";
  for (const ScenarioRecord& r : s.records) {
    std::string err = r.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    os << r.index << ',' << r.seed << ',' << r.ok << ',' << r.bundles << ',' << num(r.fuel) << ','
       << num(r.dv * 1e3) << ',' << num(r.tof) << ',' << r.feasible << ',' << num(r.min_payload_mass) << ','
       << num(r.sma_std) << ',' << num(r.sma_range) << ',' << num(r.inc_std) << ',' << num(r.inc_range) << ','
       << err << '\n';
  }
  return os.str();
}

std::string bundle_summary_to_csv(const MonteCarloSummary& s) {
  std::ostringstream os;
  os << "bundles,count,fuel_mean_kg,fuel_std_kg,fuel_min_kg,fuel_max_kg,feasible_fraction\n";
  for (const BundleSummary& b : s.by_bundles)
    os << b.bundles << ',' << b.count << ',' << num(b.fuel_mean) << ',' << num(b.fuel_std) << ','
       << num(b.fuel_min) << ',' << num(b.fuel_max) << ',' << num(b.feasible_fraction) << '\n';
  return os.str();
}

std::string monte_carlo_summary_to_json(const MonteCarloSummary& s) {
  json corr = json::object();
  for (const Correlation& c : s.correlations) corr[c.covariate] = c.pearson;
  json groups = json::array();
  for (const BundleSummary& b : s.by_bundles)
    groups.push_back({{"bundles", b.bundles},
                      {"count", b.count},
                      {"fuel_mean_kg", b.fuel_mean},
                      {"fuel_std_kg", b.fuel_std},
                      {"feasible_fraction", b.feasible_fraction}});
  return dump(json{{"version", kSchemaVersion},
                   {"scenarios", s.records.size()},
                   {"completed", s.completed},
                   {"fuel_mean_kg", s.fuel_mean},
                   {"fuel_std_kg", s.fuel_std},
                   {"feasible_fraction", s.feasible_fraction},
                   {"fuel_correlation", corr},
                   {"by_bundles", groups}});
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace orbitour
