#include "polarfade/decode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "polarfade/logdomain.hpp"

namespace polarfade {

double check_node_llr(double a, double b) {
  const double mag_a = std::fabs(a);
  const double mag_b = std::fabs(b);
  const double m = std::min(mag_a, mag_b);
  const double sum = mag_a + mag_b;
  const double diff = std::fabs(mag_a - mag_b);
  const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  return sign * (m + std::log1p(std::exp(-sum)) - std::log1p(std::exp(-diff)));
}

namespace {

inline double check_node_min_sum(double a, double b) {
  const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  return sign * std::min(std::fabs(a), std::fabs(b));
}

// ln(1 + e^{-(1-2u)L}): path-metric penalty of deciding u against LLR L.
inline double decision_penalty(uint8_t u_bit, double llr) {
  const double z = u_bit ? -llr : llr;
  return log1pexp(-z);
}

}  // namespace

ScState::ScState(int n_levels, bool min_sum) : levels_(n_levels), min_sum_(min_sum) {
  num_bits_ = 1 << levels_;
  llr_.resize(static_cast<size_t>(levels_) + 1);
  left_word_.resize(static_cast<size_t>(levels_) + 1);
  for (int level = 0; level <= levels_; ++level) {
    llr_[static_cast<size_t>(level)].resize(static_cast<size_t>(1) << (levels_ - level));
    if (level < levels_) {
      left_word_[static_cast<size_t>(level)].resize(static_cast<size_t>(1) << (levels_ - level - 1));
    }
  }
  climb_.resize(static_cast<size_t>(num_bits_));
  climb_next_.resize(static_cast<size_t>(num_bits_));
  codeword_.resize(static_cast<size_t>(num_bits_));
}

void ScState::reset(std::span<const double> channel_llrs) {
  if (channel_llrs.size() != static_cast<size_t>(num_bits_)) {
    throw ValidationError("ScState: llr vector must have length N");
  }
  std::copy(channel_llrs.begin(), channel_llrs.end(), llr_[0].begin());
  phase_ = 0;
  llr_ready_ = false;
}

void ScState::recompute_level(int level) {
  const auto& parent = llr_[static_cast<size_t>(level - 1)];
  auto& cur = llr_[static_cast<size_t>(level)];
  const size_t half = cur.size();
  const bool right_branch = ((phase_ >> (levels_ - level)) & 1) != 0;
  if (!right_branch) {
    if (min_sum_) {
      for (size_t j = 0; j < half; ++j) cur[j] = check_node_min_sum(parent[j], parent[j + half]);
    } else {
      for (size_t j = 0; j < half; ++j) cur[j] = check_node_llr(parent[j], parent[j + half]);
    }
  } else {
    const auto& left = left_word_[static_cast<size_t>(level - 1)];
    for (size_t j = 0; j < half; ++j) {
      cur[j] = parent[j + half] + (left[j] ? -parent[j] : parent[j]);
    }
  }
}

double ScState::next_llr() {
  if (phase_ >= num_bits_) throw ValidationError("ScState: all phases consumed");
  if (!llr_ready_) {
    const int first =
        phase_ == 0 ? 1 : levels_ - std::countr_zero(static_cast<unsigned>(phase_));
    for (int level = first; level <= levels_; ++level) recompute_level(level);
    llr_ready_ = true;
  }
  return llr_[static_cast<size_t>(levels_)][0];
}

void ScState::apply(uint8_t u_bit) {
  if (phase_ >= num_bits_) throw ValidationError("ScState: all phases consumed");
  if (!llr_ready_) next_llr();

  climb_[0] = u_bit & 1u;
  size_t width = 1;
  int level = levels_;
  // Fold finished right children into their parents' codewords.
  while (level > 0 && ((phase_ >> (levels_ - level)) & 1) != 0) {
    const auto& left = left_word_[static_cast<size_t>(level - 1)];
    for (size_t j = 0; j < width; ++j) {
      climb_next_[j] = left[j] ^ climb_[j];
      climb_next_[j + width] = climb_[j];
    }
    std::swap(climb_, climb_next_);
    width *= 2;
    --level;
  }
  if (level > 0) {
    std::copy_n(climb_.begin(), width, left_word_[static_cast<size_t>(level - 1)].begin());
  } else {
    std::copy_n(climb_.begin(), width, codeword_.begin());
  }
  ++phase_;
  llr_ready_ = false;
}

DecodeResult sc_decode(const CodeSpec& spec, std::span<const double> llrs, bool min_sum) {
  ScState state(spec.n, min_sum);
  state.reset(llrs);
  std::vector<uint8_t> info_mask(static_cast<size_t>(spec.block_length), 0);
  for (int i : spec.info_set) info_mask[static_cast<size_t>(i - 1)] = 1;

  DecodeResult result;
  result.info_bits.reserve(spec.info_set.size());
  for (int idx = 0; idx < spec.block_length; ++idx) {
    const double llr = state.next_llr();
    uint8_t u_bit;
    if (info_mask[static_cast<size_t>(idx)]) {
      u_bit = llr < 0.0 ? 1 : 0;
      result.info_bits.push_back(u_bit);
    } else {
      u_bit = spec.frozen_values[static_cast<size_t>(idx)] & 1u;
    }
    state.apply(u_bit);
  }
  result.codeword = state.codeword();
  return result;
}

DecodeResult scl_decode(const CodeSpec& spec, std::span<const double> llrs, int list_size,
                        bool min_sum) {
  if (list_size < 1) throw ValidationError("scl_decode: list size must be >= 1");
  if (list_size == 1) return sc_decode(spec, llrs, min_sum);

  struct Path {
    ScState state;
    double metric = 0.0;
    std::vector<uint8_t> info_bits;
  };

  std::vector<uint8_t> info_mask(static_cast<size_t>(spec.block_length), 0);
  for (int i : spec.info_set) info_mask[static_cast<size_t>(i - 1)] = 1;

  std::vector<Path> paths;
  paths.push_back(Path{ScState(spec.n, min_sum), 0.0, {}});
  paths[0].state.reset(llrs);
  paths[0].info_bits.reserve(spec.info_set.size());

  std::vector<double> path_llr;
  for (int idx = 0; idx < spec.block_length; ++idx) {
    path_llr.resize(paths.size());
    for (size_t p = 0; p < paths.size(); ++p) path_llr[p] = paths[p].state.next_llr();

    if (!info_mask[static_cast<size_t>(idx)]) {
      const uint8_t frozen = spec.frozen_values[static_cast<size_t>(idx)] & 1u;
      for (size_t p = 0; p < paths.size(); ++p) {
        paths[p].metric += decision_penalty(frozen, path_llr[p]);
        paths[p].state.apply(frozen);
      }
      continue;
    }

    struct Fork {
      size_t path;
      uint8_t u_bit;
      double metric;
    };
    std::vector<Fork> forks;
    forks.reserve(paths.size() * 2);
    for (size_t p = 0; p < paths.size(); ++p) {
      forks.push_back(Fork{p, 0, paths[p].metric + decision_penalty(0, path_llr[p])});
      forks.push_back(Fork{p, 1, paths[p].metric + decision_penalty(1, path_llr[p])});
    }
    const size_t keep = std::min<size_t>(static_cast<size_t>(list_size), forks.size());
    // Ties resolve toward earlier path then u = 0: deterministic, and the
    // list_size = 1 reduction then equals the SC hard decision.
    std::stable_sort(forks.begin(), forks.end(),
                     [](const Fork& a, const Fork& b) { return a.metric < b.metric; });

    std::vector<Path> next;
    next.reserve(keep);
    for (size_t f = 0; f < keep; ++f) {
      const Fork& fork = forks[f];
      next.push_back(paths[fork.path]);  // copy keeps the source usable for the sibling fork
      next.back().metric = fork.metric;
      next.back().info_bits.push_back(fork.u_bit);
      next.back().state.apply(fork.u_bit);
    }
    paths = std::move(next);
  }

  size_t best = 0;
  for (size_t p = 1; p < paths.size(); ++p) {
    if (paths[p].metric < paths[best].metric) best = p;
  }
  return DecodeResult{std::move(paths[best].info_bits), paths[best].state.codeword()};
}

std::vector<uint8_t> genie_zero_error_flags(int block_length, std::span<const double> llrs,
                                            bool min_sum) {
  const int levels = std::countr_zero(static_cast<unsigned>(block_length));
  if ((1 << levels) != block_length) {
    throw ValidationError("genie: block length must be a power of two");
  }
  ScState state(levels, min_sum);
  state.reset(llrs);
  std::vector<uint8_t> flags(static_cast<size_t>(block_length));
  for (int idx = 0; idx < block_length; ++idx) {
    flags[static_cast<size_t>(idx)] = state.next_llr() < 0.0 ? 1 : 0;
    state.apply(0);
  }
  return flags;
}

}  // namespace polarfade
