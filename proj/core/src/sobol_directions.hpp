#pragma once

#include <array>
#include <cstdint>

namespace orbitour::detail {

inline constexpr int kSobolMaxDim = 64;

struct SobolDimension {
  std::uint32_t poly;
  std::array<std::uint32_t, 18> m;
};

extern const SobolDimension kSobolTable[kSobolMaxDim];

}  // namespace orbitour::detail
