#pragma once

#include <span>

#include "polarfade/logdomain.hpp"
#include "polarfade/polar.hpp"
#include "polarfade/spectrum.hpp"

namespace polarfade {

// Symbol SNR gamma = Es/N0 on linear scale.
struct SnrPoint {
  double linear = 1.0;

  static SnrPoint from_linear(double value);
  static SnrPoint from_db(double db);
  double db() const;
};

// A union-bound evaluation. Union bounds legitimately exceed 1 at low SNR;
// the raw value is kept for ranking and the clipped one for reporting.
struct BoundValue {
  double log_raw = kNegInf;
  long used_terms = 0;
  long skipped_terms = 0;  // low-SNR validity violations
  int d_max = 0;
  bool applicable = true;  // false when every term was skipped

  double raw() const;
  double clipped() const;
};

// Average pairwise error probability bound for a block-wise distance vector:
// prod_l 1/(1 + d_l * gamma), evaluated in log domain. Zero components
// contribute a factor of one (lost diversity).
double log_pep_block(std::span<const int> distance, SnrPoint snr);

// Truncation default: min(N, d_min + 32). Pass d_max < 0 to use it.
int default_d_max(int block_length, int d_min);

// Exact split-spectrum bounds (block mapping, L = 2).
BoundValue channel_error_bound_block(const SplitSpectrumTable& split, int i, SnrPoint snr,
                                     int d_max = -1);
BoundValue bler_bound_block(const SplitSpectrumTable& split, const CodeSpec& spec, SnrPoint snr,
                            int d_max = -1);

// Single-block (L = 1) union bound from the ordinary spectrum.
BoundValue channel_error_bound_marginal(const SpectrumTable& spectrum, int i, SnrPoint snr,
                                        int d_max = -1);
BoundValue bler_bound_marginal(const SpectrumTable& spectrum, const CodeSpec& spec, SnrPoint snr,
                               int d_max = -1);

// Random-mapping bounds: polar spectrum times fading-pattern probability,
// any L with N = L * M.
BoundValue channel_error_bound_random(const SpectrumTable& spectrum, int i, int num_blocks,
                                      int block_size, SnrPoint snr, int d_max = -1);
BoundValue bler_bound_random(const SpectrumTable& spectrum, const CodeSpec& spec, int num_blocks,
                             int block_size, SnrPoint snr, int d_max = -1);

// Low-SNR approximations. Terms whose validity condition fails are skipped
// and counted; if nothing survives the result is flagged inapplicable.
BoundValue low_snr_channel_bound_block(const SplitSpectrumTable& split, int i, SnrPoint snr,
                                       int d_max = -1);
BoundValue low_snr_channel_bound_random(const SpectrumTable& spectrum, int i, int num_blocks,
                                        int block_size, SnrPoint snr, int d_max = -1);

// High-SNR diagnostic for one distance vector: diversity order (nonzero
// components), product distance, and the asymptote (prod d_l)^-1 gamma^-L
// when full diversity holds.
struct HighSnrPep {
  int diversity_order = 0;
  double product_distance = 1.0;
  double log_bound = 0.0;
  bool full_diversity = false;
};

HighSnrPep high_snr_pep(std::span<const int> distance, SnrPoint snr);

}  // namespace polarfade
