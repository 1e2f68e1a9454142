#include "orbitour/scenario.hpp"

#include <cmath>
#include <numeric>

#include "orbitour/errors.hpp"
#include "orbitour/random.hpp"
#include "orbitour/secular.hpp"

namespace orbitour {

KeplerianState OrbitSpec::to_kep() const {
  KeplerianState k;
  k.a = a_km;
  k.e = e;
  k.i = i_deg * kDegToRad;
  k.raan = wrap_two_pi(raan_deg * kDegToRad);
  k.argp = wrap_two_pi(argp_deg * kDegToRad);
  k.ta = wrap_two_pi(ta_deg * kDegToRad);
  return k;
}

OrbitSpec OrbitSpec::from_kep(const KeplerianState& kep) {
  return {kep.a, kep.e, kep.i * kRadToDeg, kep.raan * kRadToDeg, kep.argp * kRadToDeg, kep.ta * kRadToDeg};
}

std::string to_string(PayloadClass c) {
  switch (c) {
    case PayloadClass::CubeSat: return "cubesat";
    case PayloadClass::PocketQube: return "pocketqube";
    case PayloadClass::SmallSat: return "smallsat";
  }
  return "cubesat";
}

PayloadClass payload_class_from_string(const std::string& s) {
  if (s == "cubesat") return PayloadClass::CubeSat;
  if (s == "pocketqube") return PayloadClass::PocketQube;
  if (s == "smallsat") return PayloadClass::SmallSat;
  throw SchemaError("unknown payload class: " + s);
}

double nominal_payload_mass(PayloadClass c) {
  switch (c) {
    case PayloadClass::CubeSat: return 6.0;
    case PayloadClass::PocketQube: return 1.5;
    case PayloadClass::SmallSat: return 25.0;
  }
  return 0.0;
}

bool SpacecraftSpec::operator==(const SpacecraftSpec& o) const {
  const auto& a = thruster;
  const auto& b = o.thruster;
  return wet_mass == o.wet_mass && payload_mass_total == o.payload_mass_total && fuel_mass == o.fuel_mass &&
         a.thrust == b.thrust && a.cluster == b.cluster && a.isp == b.isp && a.t_on == b.t_on &&
         a.t_cooldown == b.t_cooldown && a.min_impulse_bit == b.min_impulse_bit;
}

double Bundle::mass() const {
  double m = 0.0;
  for (const auto& p : payloads) m += p.mass;
  return m;
}

double MissionScenario::payload_mass() const {
  double m = 0.0;
  for (const auto& b : bundles) m += b.mass();
  return m;
}

double MissionScenario::initial_mass() const { return spacecraft.dry_mass() + spacecraft.fuel_mass + payload_mass(); }

SpacecraftState MissionScenario::initial_state() const {
  SpacecraftState s;
  s.mee = kep_to_mee(insertion.to_kep());
  s.mass = initial_mass();
  s.epoch = epoch0;
  return s;
}

bool MissionScenario::operator==(const MissionScenario& o) const {
  return spacecraft == o.spacecraft && insertion == o.insertion && decommission_alt_km == o.decommission_alt_km &&
         bundles == o.bundles && epoch0 == o.epoch0 && seed == o.seed;
}

double sso_inclination(double a, const PhysicalConstants& consts) {
  if (!(a > consts.re)) throw InvalidArgument("SSO inclination: radius must exceed Re");
  const double n = orbit_scalars(a, consts).n;
  const double q = consts.re / a;
  const double c = -kSsoRaanRate / (1.5 * consts.j2 * q * q * n);
  if (c < -1.0) throw InvalidArgument("no sun-synchronous inclination at this radius");
  return std::acos(c);
}

namespace {

// Uniform random surjection of n items onto k labels: a uniform set partition into k
// blocks (Stirling recursion) followed by a uniform labelling of the blocks. This has
// the distribution of "assign uniformly, reject if any label is unused" without the
// rejection loop, which is hopeless for k close to n.
std::vector<int> sample_surjection(int n, int k, Rng& rng) {
  std::vector<std::vector<double>> S(n + 1, std::vector<double>(k + 1, 0.0));
  S[0][0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= std::min(i, k); ++j) S[i][j] = j * S[i - 1][j] + S[i - 1][j - 1];

  // Walking items backwards, item i-1 is either the smallest member of block j-1 or
  // joins one of the j blocks (ids 0..j-1) spanned by the first i-1 items.
  std::vector<int> block(n, -1);
  int j = k;
  for (int i = n; i > 0; --i) {
    const double p_new = S[i - 1][j - 1] / S[i][j];
    if (rng.uniform() < p_new) {
      block[i - 1] = --j;
    } else {
      block[i - 1] = static_cast<int>(rng.below(static_cast<std::uint64_t>(j)));
    }
  }

  std::vector<int> label(k);
  std::iota(label.begin(), label.end(), 0);
  for (int t = k - 1; t > 0; --t) std::swap(label[t], label[rng.below(static_cast<std::uint64_t>(t) + 1)]);
  for (int& b : block) b = label[b];
  return block;
}

}  // namespace

MissionScenario sample_scenario(const ScenarioConfig& cfg, std::uint64_t seed, const PhysicalConstants& consts) {
  const int n_payloads = cfg.inventory.total();
  if (cfg.inventory.cubesats < 0 || cfg.inventory.pocketqubes < 0 || cfg.inventory.smallsats < 0 || n_payloads < 1)
    throw InvalidArgument("invalid payload inventory");
  const int max_b = cfg.max_bundles.value_or(n_payloads);
  int lo = cfg.min_bundles, hi = std::min(max_b, n_payloads);
  if (cfg.fixed_bundles) lo = hi = *cfg.fixed_bundles;
  if (lo < 1 || lo > hi || hi > n_payloads) throw InvalidArgument("invalid bundle count range");

  Rng rng(seed);
  MissionScenario sc;
  sc.spacecraft = cfg.spacecraft;
  sc.insertion = cfg.insertion;
  sc.decommission_alt_km = cfg.decommission_alt_km;
  sc.seed = seed;

  const int n_bundles = rng.uniform_int(lo, hi);
  const double a_min = consts.re + cfg.nominal_alt_km - cfg.alt_spread_km;
  const double a_max = consts.re + cfg.nominal_alt_km + cfg.alt_spread_km;
  const double i_lo = sso_inclination(a_min, consts) * kRadToDeg;
  const double i_hi = sso_inclination(a_max, consts) * kRadToDeg;
  auto angle = [&](double nominal) {
    double d = nominal + rng.uniform(-cfg.angle_spread_deg, cfg.angle_spread_deg);
    d = std::fmod(d, 360.0);
    return d < 0.0 ? d + 360.0 : d;
  };
  sc.bundles.resize(n_bundles);
  for (auto& b : sc.bundles) {
    b.target.a_km = rng.uniform(a_min, a_max);
    b.target.e = 0.0;
    b.target.i_deg = rng.uniform(i_lo, i_hi);
    b.target.raan_deg = angle(cfg.raan_nominal_deg);
    b.target.argp_deg = angle(cfg.argp_nominal_deg);
    b.target.ta_deg = angle(cfg.ta_nominal_deg);
  }

  std::vector<PayloadSpec> payloads;
  auto add = [&](PayloadClass c, int count) {
    for (int t = 0; t < count; ++t) {
      const double nominal = nominal_payload_mass(c);
      payloads.push_back({c, nominal * (1.0 + rng.exponential(cfg.mass_spread))});
    }
  };
  add(PayloadClass::CubeSat, cfg.inventory.cubesats);
  add(PayloadClass::PocketQube, cfg.inventory.pocketqubes);
  add(PayloadClass::SmallSat, cfg.inventory.smallsats);

  const std::vector<int> assignment = sample_surjection(n_payloads, n_bundles, rng);
  for (int t = 0; t < n_payloads; ++t) sc.bundles[assignment[t]].payloads.push_back(payloads[t]);
  return sc;
}

}  // namespace orbitour
