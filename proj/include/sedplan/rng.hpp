#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sed {

// SplitMix64 generator. Hand-rolled so that every sampled byte is identical
// across platforms and standard-library versions; std::uniform_*_distribution
// is implementation-defined and would break byte-level reproducibility.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Rejection-free multiply-shift is biased for
  // huge n; n here is always far below 2^32 so 128-bit multiply is exact
  // enough, but we keep a rejection loop for strict uniformity.
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_int: n == 0");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do { x = next_u64(); } while (x >= limit);
    return x % n;
  }

  // Index sampled proportionally to non-negative weights (CDF walk).
  int sample_discrete(const std::vector<double>& w, double total) {
    double u = next_double() * total;
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
      acc += w[i];
      if (u < acc) return static_cast<int>(i);
    }
    // Numerical slack: fall back to the last positive weight.
    for (size_t i = w.size(); i-- > 0;)
      if (w[i] > 0.0) return static_cast<int>(i);
    throw std::invalid_argument("sample_discrete: all weights zero");
  }

  // Derive an independent child seed from a root seed and a stream index.
  // Used for the per-episode / per-player / per-rollout seed tree so that
  // results do not depend on scheduling or worker count.
  static uint64_t derive(uint64_t root, uint64_t stream) {
    Rng mix(root ^ (0x9e3779b97f4a7c15ULL + stream * 0xda942042e4dd58b5ULL));
    mix.next_u64();
    return mix.next_u64();
  }

 private:
  uint64_t state_;
};

// Stream tags for an episode's independent random streams, shared by every
// component that re-simulates the same episode (so a replay or a probe sees
// byte-identical chance even without the original driver).
inline constexpr uint64_t kChanceStream = 101;
inline constexpr uint64_t kAgentStreamBase = 1000;    // + player index
inline constexpr uint64_t kPlannerStreamBase = 2000;  // + player index

}  // namespace sed
