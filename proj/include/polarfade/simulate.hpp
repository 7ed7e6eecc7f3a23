#pragma once

#include <cstdint>
#include <vector>

#include "polarfade/channel.hpp"
#include "polarfade/decode.hpp"

namespace polarfade {

enum class DecoderKind { sc, scl };

// Fixed error-count stopping keeps relative confidence uniform across SNR.
struct StopRule {
  uint64_t max_trials = 1000000;
  uint64_t target_errors = 200;
};

struct SimConfig {
  CodeSpec spec;
  MappingSpec map;
  DecoderKind decoder = DecoderKind::sc;
  int list_size = 1;
  bool min_sum = false;
  std::vector<double> snr_db_grid;
  StopRule stop;
  uint64_t seed = 1;
  int workers = 0;  // 0 = hardware concurrency
  // The channel is symmetric under BPSK with CSI, so the all-zero shortcut
  // is statistically exact; with a random mapping it hides the interleaver
  // ensemble, hence the explicit opt-in.
  bool all_zero_codeword = false;
  bool force_all_zero = false;
  FadingOverride fixed_fading;  // test hook
};

struct SimPoint {
  double snr_db = 0.0;
  uint64_t trials = 0;
  uint64_t block_errors = 0;
  uint64_t bit_errors = 0;
  double bler = 0.0;
  double ber = 0.0;
  double bler_lo = 0.0;  // Wilson 95%
  double bler_hi = 0.0;

  bool operator==(const SimPoint&) const = default;
};

struct SimReport {
  int block_length = 0;
  int info_count = 0;
  MappingKind mapping = MappingKind::block;
  int num_blocks = 1;
  DecoderKind decoder = DecoderKind::sc;
  int list_size = 1;
  bool min_sum = false;
  uint64_t seed = 1;
  std::vector<SimPoint> points;
};

// Monte-Carlo BLER/BER over the block Rayleigh fading channel. Deterministic
// given (seed, grid): trials use counter-based substreams keyed by
// (seed, point, trial) and stopping is checked on fixed batch boundaries, so
// results do not depend on the worker count.
SimReport run_bler(const SimConfig& config);

// Genie-aided per-channel error counts under all-zero transmission
// (exact for this symmetric channel). counts[i-1] = errors of channel i.
std::vector<uint64_t> genie_error_counts(int block_length, const MappingSpec& map, SnrPoint snr,
                                         uint64_t trials, uint64_t seed, int workers = 0,
                                         const FadingOverride& fixed_fading = {});

// Wilson 95% score interval for x successes in n trials.
std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials);

}  // namespace polarfade
