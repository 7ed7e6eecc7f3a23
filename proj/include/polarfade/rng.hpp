#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace polarfade {

// Counter-based stream: the state walks an arithmetic sequence and every
// output is a finalizer of the counter, so a stream keyed by (seed, id) is
// cheap to construct per trial and identical no matter which worker runs it.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream_id) {
    state_ = mix(mix(seed + kGolden) ^ mix(stream_id + kComma));
  }

  uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe for logs.
  double next_open_double() { return 1.0 - next_double(); }

  // Standard normal, Box-Muller with pair caching.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_open_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Rayleigh amplitude with E[alpha^2] = 1 (sigma^2 = 1/2).
  double next_rayleigh_unit_power() { return std::sqrt(-std::log(next_open_double())); }

  uint32_t next_below(uint32_t bound) {
    // Lemire-style rejection; unbiased.
    uint64_t x = next_u64() & 0xFFFFFFFFull;
    uint64_t m = x * bound;
    uint32_t l = static_cast<uint32_t>(m);
    if (l < bound) {
      const uint32_t floor = static_cast<uint32_t>(-bound) % bound;
      while (l < floor) {
        x = next_u64() & 0xFFFFFFFFull;
        m = x * bound;
        l = static_cast<uint32_t>(m);
      }
    }
    return static_cast<uint32_t>(m >> 32);
  }

  uint8_t next_bit() { return static_cast<uint8_t>(next_u64() >> 63); }

  // Uniform permutation of 0..n-1 (Fisher-Yates).
  std::vector<int> next_permutation(int n) {
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(next_below(static_cast<uint32_t>(i + 1)));
      std::swap(perm[i], perm[j]);
    }
    return perm;
  }

 private:
  static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr uint64_t kComma = 0xC2B2AE3D27D4EB4Full;

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  uint64_t state_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace polarfade
