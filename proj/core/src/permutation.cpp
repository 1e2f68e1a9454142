#include "orbitour/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbitour/errors.hpp"
#include "orbitour/sobol.hpp"

namespace orbitour {

bool is_permutation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return !p.empty();
}

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) q[p[j]] = static_cast<int>(j);
  return q;
}

int kendall_distance(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw InvalidArgument("kendall_distance: size mismatch");
  const Permutation pos_b = inverse(b);
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (pos_b[a[i]] > pos_b[a[j]]) ++d;
  return d;
}

int max_kendall_distance(int n) { return n * (n - 1) / 2; }

Permutation decode(const RandomKeyVector& keys) {
  Permutation p = identity_permutation(static_cast<int>(keys.size()));
  std::stable_sort(p.begin(), p.end(), [&](int a, int b) { return keys[a] < keys[b]; });
  return p;
}

RandomKeyVector encode_with_draw(const Permutation& perm, std::vector<double> sorted_draw) {
  if (!is_permutation(perm)) throw InvalidArgument("encode: not a permutation");
  if (sorted_draw.size() != perm.size()) throw InvalidArgument("encode: draw size mismatch");
  std::sort(sorted_draw.begin(), sorted_draw.end());
  RandomKeyVector keys(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) keys[perm[j]] = sorted_draw[j];
  return keys;
}

RandomKeyVector encode(const Permutation& perm, Rng& rng) {
  std::vector<double> draw(perm.size());
  for (auto& d : draw) d = rng.uniform();
  return encode_with_draw(perm, std::move(draw));
}

RandomKeyVector encode(const Permutation& perm, std::uint64_t seed) {
  Rng rng(seed);
  return encode(perm, rng);
}

std::vector<Permutation> sample_uniform_permutations(int n, int count, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("permutation size must be positive");
  std::vector<Permutation> out;
  out.reserve(count);
  if (n == 1) {
    out.assign(count, Permutation{0});
    return out;
  }
  SobolEngine eng(n, seed);
  std::vector<double> pt;
  for (int c = 0; c < count; ++c) {
    eng.next(pt);
    out.push_back(decode(pt));
  }
  return out;
}

MallowsSampler::MallowsSampler(MallowsParams params, std::uint64_t seed) : params_(std::move(params)), rng_(seed) {
  if (!is_permutation(params_.center)) throw InvalidArgument("Mallows center is not a permutation");
  if (!(params_.theta >= 0.0)) throw InvalidArgument("Mallows dispersion must be non-negative");
  const int n = static_cast<int>(params_.center.size());
  cdf_.resize(n);
  for (int i = 0; i < n; ++i) {
    // Inserting item i so that it jumps ahead of d earlier items adds d inversions.
    cdf_[i].resize(i + 1);
    double acc = 0.0;
    for (int d = 0; d <= i; ++d) {
      acc += std::exp(-params_.theta * d);
      cdf_[i][d] = acc;
    }
  }
}

Permutation MallowsSampler::next() {
  const int n = static_cast<int>(params_.center.size());
  Permutation out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto& c = cdf_[i];
    const double u = rng_.uniform() * c.back();
    const int d = static_cast<int>(std::upper_bound(c.begin(), c.end(), u) - c.begin());
    out.insert(out.end() - std::min(d, i), params_.center[i]);
  }
  return out;
}

std::vector<Permutation> sample_mallows(const MallowsParams& params, int count, std::uint64_t seed) {
  MallowsSampler s(params, seed);
  std::vector<Permutation> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) out.push_back(s.next());
  return out;
}

}  // namespace orbitour
