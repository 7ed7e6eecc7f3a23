#pragma once

#include <optional>
#include <vector>

#include "polarfade/bounds.hpp"
#include "polarfade/polar.hpp"
#include "polarfade/rng.hpp"

namespace polarfade {

// Per-codeword fading draw: L i.i.d. Rayleigh amplitudes with E[alpha^2] = 1.
struct FadingRealization {
  std::vector<double> alphas;
};

enum class MappingKind { block, random };
enum class InterleaverPolicy { fresh_per_codeword, fixed_seeded };

struct MappingSpec {
  MappingKind kind = MappingKind::block;
  int num_blocks = 1;  // L
  int block_size = 0;  // M, N = L * M
  InterleaverPolicy interleaver = InterleaverPolicy::fresh_per_codeword;
  uint64_t fixed_interleaver_seed = 0;

  void validate(int block_length) const;
};

// BPSK over the real dimension: s = 1 - 2x (Es = 1), y = alpha_l s + n with
// noise variance N0/2 = 1/(2 gamma) per sample. The paper's complex model
// carries BPSK information only in the real dimension, so this is exact.
struct TransmitResult {
  std::vector<double> received;   // channel order
  FadingRealization fading;
  std::vector<int> interleaver;   // channel position p carries codeword bit interleaver[p]
};

// Test hook: force the fading amplitudes (e.g. all ones for an AWGN
// degenerate channel, or zero for an erased block).
using FadingOverride = std::optional<std::vector<double>>;

TransmitResult transmit(const BitBlock& codeword, const MappingSpec& map, SnrPoint snr,
                        CounterRng& rng, const FadingOverride& forced_fading = std::nullopt);

// Per-bit LLR 4 * gamma * alpha_l * y, de-interleaved back to codeword order.
// Assumes perfect CSI at the receiver.
std::vector<double> llr_vector(const TransmitResult& tx, const MappingSpec& map, SnrPoint snr);

std::vector<int> identity_interleaver(int block_length);

}  // namespace polarfade
