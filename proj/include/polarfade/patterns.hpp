#pragma once

#include <functional>
#include <vector>

#include "polarfade/combinatorics.hpp"
#include "polarfade/errors.hpp"

namespace polarfade {

// How a weight-d codeword spreads over L fading blocks of M bits each:
// counts[v] = number of blocks carrying Hamming weight v, v = 0..w with
// w = min(d, M).
struct WeightPattern {
  int num_blocks = 0;   // L
  int block_size = 0;   // M
  int weight = 0;       // d
  std::vector<int> counts;  // f_0..f_w

  int max_block_weight() const { return static_cast<int>(counts.size()) - 1; }  // w
  int faded_blocks() const { return num_blocks - counts[0]; }                   // F = L - f_0
  void validate() const;
};

// Streams every pattern for (L, M, d) in the canonical nested order
// (outer loop over F, then f_1, f_2, ..., f_w depth-first with running
// remainders). Deterministic; used by bounds and construction alike.
void for_each_pattern(int num_blocks, int block_size, int weight,
                      const std::function<void(const WeightPattern&)>& visit);

std::vector<WeightPattern> enumerate_patterns(int num_blocks, int block_size, int weight);

// P_d(f) = [prod_v C(M,v)^{f_v} / C(N,d)] * L! / prod_v f_v!  in natural log.
double log_pattern_probability(const WeightPattern& p);

// Exact rational evaluation; test oracle for the log path.
BigRat pattern_probability_exact(const WeightPattern& p, const BinomialTable& binom);

// ln B(L,f,d) = ln [ multinomial(L; f_0..f_w) / C(N,d) ].
double log_pattern_multinomial_ratio(const WeightPattern& p);

}  // namespace polarfade
