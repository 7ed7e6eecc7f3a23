#include "polarfade/channel.hpp"

#include <cmath>
#include <numeric>

namespace polarfade {

void MappingSpec::validate(int block_length) const {
  if (num_blocks < 1 || block_size < 1 || num_blocks * block_size != block_length) {
    throw ValidationError("MappingSpec: need N = L * M");
  }
}

std::vector<int> identity_interleaver(int block_length) {
  std::vector<int> perm(static_cast<size_t>(block_length));
  std::iota(perm.begin(), perm.end(), 0);
  return perm;
}

TransmitResult transmit(const BitBlock& codeword, const MappingSpec& map, SnrPoint snr,
                        CounterRng& rng, const FadingOverride& forced_fading) {
  const int block_length = static_cast<int>(codeword.size());
  map.validate(block_length);

  TransmitResult tx;
  if (map.kind == MappingKind::block) {
    tx.interleaver = identity_interleaver(block_length);
  } else if (map.interleaver == InterleaverPolicy::fresh_per_codeword) {
    tx.interleaver = rng.next_permutation(block_length);
  } else {
    CounterRng fixed(map.fixed_interleaver_seed, 0);
    tx.interleaver = fixed.next_permutation(block_length);
  }

  if (forced_fading.has_value()) {
    if (forced_fading->size() != static_cast<size_t>(map.num_blocks)) {
      throw ValidationError("transmit: fading override must have L entries");
    }
    tx.fading.alphas = *forced_fading;
  } else {
    tx.fading.alphas.resize(static_cast<size_t>(map.num_blocks));
    for (double& a : tx.fading.alphas) a = rng.next_rayleigh_unit_power();
  }

  const double noise_sigma = std::sqrt(0.5 / snr.linear);  // N0/2 per real sample
  tx.received.resize(static_cast<size_t>(block_length));
  for (int p = 0; p < block_length; ++p) {
    const double s = 1.0 - 2.0 * codeword[static_cast<size_t>(tx.interleaver[p])];
    const double alpha = tx.fading.alphas[static_cast<size_t>(p / map.block_size)];
    tx.received[static_cast<size_t>(p)] = alpha * s + noise_sigma * rng.next_gaussian();
  }
  return tx;
}

std::vector<double> llr_vector(const TransmitResult& tx, const MappingSpec& map, SnrPoint snr) {
  const int block_length = static_cast<int>(tx.received.size());
  std::vector<double> llrs(static_cast<size_t>(block_length));
  for (int p = 0; p < block_length; ++p) {
    const double alpha = tx.fading.alphas[static_cast<size_t>(p / map.block_size)];
    llrs[static_cast<size_t>(tx.interleaver[p])] = 4.0 * snr.linear * alpha * tx.received[static_cast<size_t>(p)];
  }
  return llrs;
}

}  // namespace polarfade
