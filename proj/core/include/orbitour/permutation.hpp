#pragma once

#include <cstdint>
#include <vector>

#include "orbitour/random.hpp"

namespace orbitour {

// order[j] = index visited at position j.
using Permutation = std::vector<int>;
using RandomKeyVector = std::vector<double>;

struct MallowsParams {
  Permutation center;
  double theta = 1.0;
};

bool is_permutation(const Permutation& p);
Permutation identity_permutation(int n);
Permutation inverse(const Permutation& p);

// Number of discordant pairs between two orderings of the same items.
int kendall_distance(const Permutation& a, const Permutation& b);
int max_kendall_distance(int n);

// Stable argsort: ties keep index order.
Permutation decode(const RandomKeyVector& keys);

// Places sorted_draw[j] at key position perm[j], so decode(encode(perm)) == perm.
RandomKeyVector encode_with_draw(const Permutation& perm, std::vector<double> sorted_draw);
RandomKeyVector encode(const Permutation& perm, Rng& rng);
RandomKeyVector encode(const Permutation& perm, std::uint64_t seed);

std::vector<Permutation> sample_uniform_permutations(int n, int count, std::uint64_t seed);

// Repeated-insertion sampler for the Kendall-tau Mallows model.
class MallowsSampler {
 public:
  MallowsSampler(MallowsParams params, std::uint64_t seed);
  Permutation next();

 private:
  MallowsParams params_;
  Rng rng_;
  std::vector<std::vector<double>> cdf_;  // per insertion step, cumulative weights
};

std::vector<Permutation> sample_mallows(const MallowsParams& params, int count, std::uint64_t seed);

}  // namespace orbitour
