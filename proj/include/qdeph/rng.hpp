#pragma once

#include <cmath>
#include <cstdint>

namespace qdeph {

// splitmix64: fixed generator so sampled ensembles are identical across
// platforms and standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // standard normal via Box-Muller
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double phi = 2.0 * M_PI * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Stream derivation for (master_seed, index) pairs; one splitmix64 step over
// the mixed words keeps streams decorrelated.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  SplitMix64 g(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return g.next_u64();
}

}  // namespace qdeph
