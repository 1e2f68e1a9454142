#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace orbitour {

inline constexpr int kSobolMaxDimension = 64;

// Gray-code Sobol generator, 32-bit resolution. A scramble seed applies a random
// digital shift. The all-zero first point is skipped on construction.
class SobolEngine {
 public:
  explicit SobolEngine(int dim, std::optional<std::uint64_t> scramble_seed = std::nullopt, bool skip_origin = true);

  int dim() const { return dim_; }
  void next(std::vector<double>& point);
  std::vector<double> next();

 private:
  int dim_;
  std::uint32_t index_ = 0;
  std::vector<std::uint32_t> x_;
  std::vector<std::uint32_t> shift_;
  std::vector<std::uint32_t> v_;  // dim * 32 direction numbers
  void advance();
};

std::vector<std::vector<double>> sobol_points(int dim, int count, std::optional<std::uint64_t> scramble_seed = std::nullopt);

}  // namespace orbitour
