#ifndef SAGIN_RNG_HPP
#define SAGIN_RNG_HPP

#include <cstdint>
#include <vector>
#include <random>

namespace sagin {

// Resource quantities (Mbps, GFLOPS, ms) are kept on a 2^-10 grid. Sums and
// differences of grid values are exact in a double at the magnitudes used
// here, so residual-capacity bookkeeping round-trips bit-exactly under
// commit/release.
constexpr double kResourceGrid = 1024.0;

double quantize(double x);

// Derives an independent stream seed from a scenario seed and a purpose tag
// (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

// Seeded uniform draws on top of std::mt19937_64. The engine is fully
// specified by the standard; the standard distributions are not, so the
// mappings below are done by hand to keep runs reproducible across
// compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0,1) with 53 random bits.
  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0,n).
  std::uint64_t below(std::uint64_t n);

  // Uniform integer in [lo,hi] inclusive.
  int uniform_int(int lo, int hi);

  // Uniform in [lo,hi], snapped to the resource grid. The bounds are first
  // snapped inward so the result never leaves [lo,hi].
  double uniform(double lo, double hi);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sagin

#endif  // SAGIN_RNG_HPP
