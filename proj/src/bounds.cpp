#include "polarfade/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "polarfade/patterns.hpp"

namespace polarfade {

SnrPoint SnrPoint::from_linear(double value) {
  if (!(value > 0.0)) throw ValidationError("SnrPoint: gamma must be strictly positive");
  return SnrPoint{value};
}

SnrPoint SnrPoint::from_db(double db) { return from_linear(std::pow(10.0, db / 10.0)); }

double SnrPoint::db() const { return 10.0 * std::log10(linear); }

double BoundValue::raw() const { return std::exp(log_raw); }

double BoundValue::clipped() const { return std::min(1.0, raw()); }

double log_pep_block(std::span<const int> distance, SnrPoint snr) {
  double log_pep = 0.0;
  for (int d : distance) {
    if (d < 0) throw ValidationError("pep: negative block distance");
    log_pep -= std::log1p(d * snr.linear);
  }
  return log_pep;
}

int default_d_max(int block_length, int d_min) { return std::min(block_length, d_min + 32); }

namespace {

BoundValue finish(LogSum& acc, long used, long skipped, int d_max) {
  BoundValue v;
  v.log_raw = acc.value();
  v.used_terms = used;
  v.skipped_terms = skipped;
  v.d_max = d_max;
  v.applicable = used > 0;
  return v;
}

BoundValue sum_bounds(const std::vector<BoundValue>& parts) {
  LogSum acc;
  BoundValue out;
  for (const auto& p : parts) {
    if (p.applicable) acc.add(p.log_raw);
    out.used_terms += p.used_terms;
    out.skipped_terms += p.skipped_terms;
    out.d_max = std::max(out.d_max, p.d_max);
  }
  out.log_raw = acc.value();
  out.applicable = out.used_terms > 0;
  return out;
}

}  // namespace

BoundValue channel_error_bound_block(const SplitSpectrumTable& split, int i, SnrPoint snr,
                                     int d_max) {
  const int d_min = split.d_min(i);
  if (d_max < 0) d_max = default_d_max(split.block_length, d_min);
  LogSum acc;
  long used = 0;
  for (const auto& e : split.a(i).entries) {
    const int d = e.j + e.k;
    if (d < d_min || d > d_max) continue;
    const int parts[2] = {e.j, e.k};
    acc.add(log_big(e.count) + log_pep_block(parts, snr));
    ++used;
  }
  return finish(acc, used, 0, d_max);
}

BoundValue bler_bound_block(const SplitSpectrumTable& split, const CodeSpec& spec, SnrPoint snr,
                            int d_max) {
  if (spec.block_length != split.block_length) {
    throw ValidationError("bler_bound_block: table/code length mismatch");
  }
  std::vector<BoundValue> parts;
  for (int i : spec.info_set) parts.push_back(channel_error_bound_block(split, i, snr, d_max));
  return sum_bounds(parts);
}

BoundValue channel_error_bound_marginal(const SpectrumTable& spectrum, int i, SnrPoint snr,
                                        int d_max) {
  const int d_min = spectrum.d_min(i);
  if (d_max < 0) d_max = default_d_max(spectrum.block_length, d_min);
  LogSum acc;
  long used = 0;
  for (const auto& e : spectrum.a(i).entries) {
    if (e.d < d_min || e.d > d_max) continue;
    acc.add(log_big(e.count) - std::log1p(e.d * snr.linear));
    ++used;
  }
  return finish(acc, used, 0, d_max);
}

BoundValue bler_bound_marginal(const SpectrumTable& spectrum, const CodeSpec& spec, SnrPoint snr,
                               int d_max) {
  if (spec.block_length != spectrum.block_length) {
    throw ValidationError("bler_bound_marginal: table/code length mismatch");
  }
  std::vector<BoundValue> parts;
  for (int i : spec.info_set) parts.push_back(channel_error_bound_marginal(spectrum, i, snr, d_max));
  return sum_bounds(parts);
}

BoundValue channel_error_bound_random(const SpectrumTable& spectrum, int i, int num_blocks,
                                      int block_size, SnrPoint snr, int d_max) {
  if (num_blocks * block_size != spectrum.block_length) {
    throw ValidationError("random bound: need N = L * M");
  }
  const int d_min = spectrum.d_min(i);
  if (d_max < 0) d_max = default_d_max(spectrum.block_length, d_min);
  LogSum acc;
  long used = 0;
  for (const auto& e : spectrum.a(i).entries) {
    if (e.d < d_min || e.d > d_max) continue;
    const double log_count = log_big(e.count);
    for_each_pattern(num_blocks, block_size, e.d, [&](const WeightPattern& p) {
      double log_term = log_count + log_pattern_probability(p);
      for (int v = 1; v <= p.max_block_weight(); ++v) {
        if (p.counts[static_cast<size_t>(v)] > 0) {
          log_term -= p.counts[static_cast<size_t>(v)] * std::log1p(v * snr.linear);
        }
      }
      acc.add(log_term);
      ++used;
    });
  }
  return finish(acc, used, 0, d_max);
}

BoundValue bler_bound_random(const SpectrumTable& spectrum, const CodeSpec& spec, int num_blocks,
                             int block_size, SnrPoint snr, int d_max) {
  if (spec.block_length != spectrum.block_length) {
    throw ValidationError("bler_bound_random: table/code length mismatch");
  }
  std::vector<BoundValue> parts;
  for (int i : spec.info_set) {
    parts.push_back(channel_error_bound_random(spectrum, i, num_blocks, block_size, snr, d_max));
  }
  return sum_bounds(parts);
}

BoundValue low_snr_channel_bound_block(const SplitSpectrumTable& split, int i, SnrPoint snr,
                                       int d_max) {
  const int d_min = split.d_min(i);
  if (d_max < 0) d_max = default_d_max(split.block_length, d_min);
  LogSum acc;
  long used = 0;
  long skipped = 0;
  for (const auto& e : split.a(i).entries) {
    const int d = e.j + e.k;
    if (d < d_min || d > d_max) continue;
    const double log_count = log_big(e.count);
    const double v_term = 0.5 * log_count;  // V = (1/L) ln A, L = 2
    double log_term = log_count;
    bool valid = true;
    for (int part : {e.j, e.k}) {
      const double shifted = 1.0 + part * snr.linear;
      const double denom = shifted - v_term;
      if (!(denom > 0.0)) {
        valid = false;
        break;
      }
      log_term += -shifted - std::log(denom);
    }
    if (!valid) {
      ++skipped;
      continue;
    }
    acc.add(log_term);
    ++used;
  }
  return finish(acc, used, skipped, d_max);
}

BoundValue low_snr_channel_bound_random(const SpectrumTable& spectrum, int i, int num_blocks,
                                        int block_size, SnrPoint snr, int d_max) {
  if (num_blocks * block_size != spectrum.block_length) {
    throw ValidationError("random bound: need N = L * M");
  }
  const int d_min = spectrum.d_min(i);
  if (d_max < 0) d_max = default_d_max(spectrum.block_length, d_min);
  LogSum acc;
  long used = 0;
  long skipped = 0;
  for (const auto& e : spectrum.a(i).entries) {
    if (e.d < d_min || e.d > d_max) continue;
    const double log_count = log_big(e.count);
    for_each_pattern(num_blocks, block_size, e.d, [&](const WeightPattern& p) {
      const double log_ratio = log_count + log_pattern_multinomial_ratio(p);  // ln[A(d) B(L,f,d)]
      const int w = p.max_block_weight();
      double log_term = 0.0;
      bool valid = true;
      for (int v = 1; v <= w && valid; ++v) {
        const int f_v = p.counts[static_cast<size_t>(v)];
        if (f_v == 0) continue;  // empty factor, excluded from the product
        const double log_c = log_ratio / (static_cast<double>(w) * f_v) + log_binomial(block_size, v);
        const double denom = 1.0 + v * snr.linear - log_c;
        if (!(denom > 0.0)) {
          valid = false;
          break;
        }
        log_term += -f_v * denom - f_v * std::log(denom);
      }
      if (!valid) {
        ++skipped;
        return;
      }
      acc.add(log_term);
      ++used;
    });
  }
  return finish(acc, used, skipped, d_max);
}

HighSnrPep high_snr_pep(std::span<const int> distance, SnrPoint snr) {
  HighSnrPep result;
  double log_product = 0.0;
  for (int d : distance) {
    if (d < 0) throw ValidationError("high_snr_pep: negative block distance");
    if (d > 0) {
      ++result.diversity_order;
      result.product_distance *= d;
      log_product += std::log(static_cast<double>(d));
    }
  }
  result.full_diversity = result.diversity_order == static_cast<int>(distance.size());
  if (result.full_diversity) {
    result.log_bound = -log_product - static_cast<double>(distance.size()) * std::log(snr.linear);
  } else {
    result.log_bound = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

}  // namespace polarfade
