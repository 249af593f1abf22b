#pragma once

#include <cstdint>
#include <string_view>

namespace dexnet {

// Deterministic, platform-independent generator (splitmix64). Used instead of
// <random> engines+distributions so that seeded runs produce identical bytes
// on any build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, n), rejection-sampled to remove modulo bias.
  std::uint64_t bounded(std::uint64_t n) {
    std::uint64_t threshold = (-n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives an independent substream seed from a root seed and a consumer name,
// so adding a consumer never perturbs the draws of existing ones.
std::uint64_t named_stream(std::uint64_t root_seed, std::string_view name);

}  // namespace dexnet
