#include "sagin/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace sagin {

double quantize(double x) { return std::round(x * kResourceGrid) / kResourceGrid; }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + tag * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  // rejection sampling to avoid modulo bias
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

int Rng::uniform_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("Rng::uniform_int: empty range");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("Rng::uniform: empty range");
  const double lo_g = std::ceil(lo * kResourceGrid) / kResourceGrid;
  const double hi_g = std::floor(hi * kResourceGrid) / kResourceGrid;
  if (lo_g > hi_g) throw std::invalid_argument("Rng::uniform: range narrower than grid step");
  const std::uint64_t steps = static_cast<std::uint64_t>(std::llround((hi_g - lo_g) * kResourceGrid));
  return lo_g + static_cast<double>(below(steps + 1)) / kResourceGrid;
}

}  // namespace sagin
