#include "orbitour/sobol.hpp"

#include <bit>

#include "orbitour/errors.hpp"
#include "orbitour/random.hpp"
#include "sobol_directions.hpp"

namespace orbitour {

namespace {
constexpr int kBits = 32;
}

SobolEngine::SobolEngine(int dim, std::optional<std::uint64_t> scramble_seed, bool skip_origin)
    : dim_(dim), x_(dim, 0u), shift_(dim, 0u), v_(static_cast<std::size_t>(dim) * kBits, 0u) {
  if (dim < 1 || dim > kSobolMaxDimension) throw InvalidArgument("Sobol dimension must lie in [1, 64]");
  for (int j = 0; j < dim; ++j) {
    std::uint32_t* v = &v_[static_cast<std::size_t>(j) * kBits];
    const auto& row = detail::kSobolTable[j];
    if (j == 0) {
      for (int b = 0; b < kBits; ++b) v[b] = 1u << (kBits - 1 - b);
      continue;
    }
    const int s = std::bit_width(row.poly) - 1;
    std::uint32_t m[kBits];
    for (int b = 0; b < s; ++b) m[b] = row.m[b];
    for (int b = s; b < kBits; ++b) {
      std::uint32_t val = m[b - s] ^ (m[b - s] << s);
      for (int q = 1; q < s; ++q) {
        if ((row.poly >> (s - q)) & 1u) val ^= m[b - q] << q;
      }
      m[b] = val;
    }
    for (int b = 0; b < kBits; ++b) v[b] = m[b] << (kBits - 1 - b);
  }
  if (scramble_seed) {
    Rng rng(*scramble_seed);
    for (int j = 0; j < dim; ++j) shift_[j] = static_cast<std::uint32_t>(rng.next_u64() >> 32);
  }
  if (skip_origin) advance();
}

void SobolEngine::advance() {
  // Flip the direction number indexed by the lowest zero bit of the counter.
  const int c = std::countr_one(index_);
  ++index_;
  for (int j = 0; j < dim_; ++j) x_[j] ^= v_[static_cast<std::size_t>(j) * kBits + c];
}

void SobolEngine::next(std::vector<double>& point) {
  point.resize(dim_);
  for (int j = 0; j < dim_; ++j) point[j] = static_cast<double>(x_[j] ^ shift_[j]) * 0x1.0p-32;
  advance();
}

std::vector<double> SobolEngine::next() {
  std::vector<double> p;
  next(p);
  return p;
}

std::vector<std::vector<double>> sobol_points(int dim, int count, std::optional<std::uint64_t> scramble_seed) {
  if (count < 1) throw InvalidArgument("Sobol count must be positive");
  SobolEngine eng(dim, scramble_seed);
  std::vector<std::vector<double>> out(count);
  for (auto& p : out) eng.next(p);
  return out;
}

}  // namespace orbitour
