#pragma once

#include <cmath>
#include <cstdint>

namespace floorloop {

// Deterministic seeded RNG with explicitly defined distributions so that
// generated artifacts are bit-identical across platforms and standard
// libraries (std::*_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  // splitmix64 step
  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller (one value per call; cached pair unused
  // on purpose to keep the stream position independent of call pattern)
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  // Poisson by inversion for small means, normal approximation above.
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 64.0) {
      const int n = static_cast<int>(std::lround(mean + std::sqrt(mean) * normal()));
      return n < 0 ? 0 : n;
    }
    const double limit = std::exp(-mean);
    double prod = uniform();
    int n = 0;
    while (prod > limit) {
      prod *= uniform();
      ++n;
    }
    return n;
  }

 private:
  uint64_t state_;
};

// Mixes a base seed with a stream index (e.g. frame id) so per-frame
// streams are independent of generation order.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed ^ (0x9e3779b97f4a7c15ull + (stream << 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace floorloop
