#pragma once

#include <span>
#include <vector>

#include "polarfade/polar.hpp"

namespace polarfade {

// Stepwise successive-cancellation engine over the natural-order transform.
// Feeds one u-domain LLR per phase and takes the decision back; copyable, so
// list decoding clones it at branch points.
class ScState {
 public:
  ScState(int n_levels, bool min_sum);

  void reset(std::span<const double> channel_llrs);
  int phase() const { return phase_; }
  int block_length() const { return num_bits_; }

  // LLR of u_{phase+1} given all earlier decisions.
  double next_llr();
  // Commit the decision for the current phase.
  void apply(uint8_t u_bit);

  // Valid after all N phases: re-encoded codeword of the decided u.
  const BitBlock& codeword() const { return codeword_; }

 private:
  void recompute_level(int level);

  int levels_ = 0;    // n
  int num_bits_ = 0;  // N
  bool min_sum_ = false;
  int phase_ = 0;
  bool llr_ready_ = false;
  std::vector<std::vector<double>> llr_;       // llr_[level], size 2^(n-level)
  std::vector<std::vector<uint8_t>> left_word_;  // finished left-child codeword per level
  BitBlock climb_;
  BitBlock climb_next_;
  BitBlock codeword_;
};

struct DecodeResult {
  std::vector<uint8_t> info_bits;
  BitBlock codeword;
};

// Plain SC: exact tanh-domain check updates by default, min-sum optional.
DecodeResult sc_decode(const CodeSpec& spec, std::span<const double> llrs, bool min_sum = false);

// Path-metric SCL without CRC; list_size = 1 matches sc_decode bit for bit.
DecodeResult scl_decode(const CodeSpec& spec, std::span<const double> llrs, int list_size,
                        bool min_sum = false);

// Genie-aided pass under the all-zero transmission: every prior bit is
// corrected, so entry i reports whether polarized channel i alone failed.
std::vector<uint8_t> genie_zero_error_flags(int block_length, std::span<const double> llrs,
                                            bool min_sum = false);

// Exact binary check-node update, numerically stabilized.
double check_node_llr(double a, double b);

}  // namespace polarfade
