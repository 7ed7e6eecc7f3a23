#include "polarfade/patterns.hpp"

#include <cmath>

namespace polarfade {

void WeightPattern::validate() const {
  if (num_blocks < 1 || block_size < 1 || weight < 0) {
    throw ValidationError("WeightPattern: need L >= 1, M >= 1, d >= 0");
  }
  if (weight > num_blocks * block_size) throw ValidationError("WeightPattern: d exceeds N");
  const int w = std::min(weight, block_size);
  if (static_cast<int>(counts.size()) != w + 1) {
    throw ValidationError("WeightPattern: counts must have size min(d,M)+1");
  }
  int block_sum = 0;
  int weight_sum = 0;
  for (int v = 0; v <= w; ++v) {
    if (counts[v] < 0) throw ValidationError("WeightPattern: negative count");
    block_sum += counts[v];
    weight_sum += v * counts[v];
  }
  if (block_sum != num_blocks) throw ValidationError("WeightPattern: counts must sum to L");
  if (weight_sum != weight) throw ValidationError("WeightPattern: weighted counts must sum to d");
}

namespace {

struct PatternDfs {
  int num_blocks;
  int block_size;
  int weight;
  int w;
  const std::function<void(const WeightPattern&)>* visit;
  WeightPattern scratch;

  // Chooses f_v for v, v+1, ... with `blocks_left` nonzero blocks and
  // `weight_left` weight still to place.
  void descend(int v, int blocks_left, int weight_left) {
    if (v > w) {
      if (blocks_left == 0 && weight_left == 0) (*visit)(scratch);
      return;
    }
    // F_v = min{F - sum f_r, (d - sum r*f_r)/v}; prune branches whose
    // leftover blocks cannot absorb the leftover weight with parts in v+1..w.
    const int cap = std::min(blocks_left, weight_left / v);
    for (int f = 0; f <= cap; ++f) {
      const int nb = blocks_left - f;
      const int nw = weight_left - f * v;
      if (static_cast<long>(nb) * (v + 1) <= nw && nw <= static_cast<long>(nb) * w) {
        scratch.counts[static_cast<size_t>(v)] = f;
        descend(v + 1, nb, nw);
        scratch.counts[static_cast<size_t>(v)] = 0;
      }
    }
  }
};

}  // namespace

void for_each_pattern(int num_blocks, int block_size, int weight,
                      const std::function<void(const WeightPattern&)>& visit) {
  if (num_blocks < 1 || block_size < 1) throw ValidationError("patterns: need L >= 1 and M >= 1");
  if (weight < 0 || weight > num_blocks * block_size) return;
  const int w = std::min(weight, block_size);
  if (weight == 0) {
    WeightPattern p{num_blocks, block_size, 0, std::vector<int>{num_blocks}};
    visit(p);
    return;
  }
  PatternDfs dfs;
  dfs.num_blocks = num_blocks;
  dfs.block_size = block_size;
  dfs.weight = weight;
  dfs.w = w;
  dfs.visit = &visit;
  dfs.scratch.num_blocks = num_blocks;
  dfs.scratch.block_size = block_size;
  dfs.scratch.weight = weight;
  dfs.scratch.counts.assign(static_cast<size_t>(w) + 1, 0);
  const int min_faded = (weight + block_size - 1) / block_size;  // ceil(d/M)
  const int max_faded = std::min(weight, num_blocks);
  for (int faded = min_faded; faded <= max_faded; ++faded) {
    dfs.scratch.counts[0] = num_blocks - faded;
    dfs.descend(1, faded, weight);
  }
}

std::vector<WeightPattern> enumerate_patterns(int num_blocks, int block_size, int weight) {
  std::vector<WeightPattern> out;
  for_each_pattern(num_blocks, block_size, weight,
                   [&](const WeightPattern& p) { out.push_back(p); });
  return out;
}

double log_pattern_multinomial_ratio(const WeightPattern& p) {
  double log_multinomial = std::lgamma(p.num_blocks + 1.0);
  for (int f : p.counts) log_multinomial -= std::lgamma(f + 1.0);
  return log_multinomial - log_binomial(p.num_blocks * p.block_size, p.weight);
}

double log_pattern_probability(const WeightPattern& p) {
  double log_prob = log_pattern_multinomial_ratio(p);
  for (int v = 1; v <= p.max_block_weight(); ++v) {
    if (p.counts[static_cast<size_t>(v)] > 0) {
      log_prob += p.counts[static_cast<size_t>(v)] * log_binomial(p.block_size, v);
    }
  }
  return log_prob;
}

BigRat pattern_probability_exact(const WeightPattern& p, const BinomialTable& binom) {
  BigInt numerator = 1;
  for (int v = 1; v <= p.max_block_weight(); ++v) {
    for (int r = 0; r < p.counts[static_cast<size_t>(v)]; ++r) numerator *= binom(p.block_size, v);
  }
  BigInt multinomial;
  mpz_fac_ui(multinomial.get_mpz_t(), static_cast<unsigned long>(p.num_blocks));
  for (int f : p.counts) {
    BigInt fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(f));
    mpz_divexact(multinomial.get_mpz_t(), multinomial.get_mpz_t(), fact.get_mpz_t());
  }
  BigRat result(numerator * multinomial, binom(p.num_blocks * p.block_size, p.weight));
  result.canonicalize();
  return result;
}

}  // namespace polarfade
