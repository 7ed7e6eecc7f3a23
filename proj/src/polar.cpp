#include "polarfade/polar.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace polarfade {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(int v) { return std::countr_zero(static_cast<unsigned>(v)); }

}  // namespace

CodeSpec CodeSpec::make(int block_length, std::vector<int> info_set,
                        std::vector<uint8_t> frozen_values) {
  CodeSpec spec;
  spec.block_length = block_length;
  if (!is_power_of_two(block_length)) throw ValidationError("CodeSpec: N must be a power of two");
  spec.n = log2_exact(block_length);
  std::sort(info_set.begin(), info_set.end());
  spec.info_set = std::move(info_set);
  if (frozen_values.empty()) frozen_values.assign(static_cast<size_t>(block_length), 0);
  spec.frozen_values = std::move(frozen_values);
  spec.validate();
  return spec;
}

bool CodeSpec::is_info(int i) const {
  return std::binary_search(info_set.begin(), info_set.end(), i);
}

void CodeSpec::validate() const {
  if (!is_power_of_two(block_length)) throw ValidationError("CodeSpec: N must be a power of two");
  if (frozen_values.size() != static_cast<size_t>(block_length)) {
    throw ValidationError("CodeSpec: frozen_values must have length N");
  }
  int prev = 0;
  for (int i : info_set) {
    if (i < 1 || i > block_length) throw ValidationError("CodeSpec: info index out of 1..N");
    if (i == prev) throw ValidationError("CodeSpec: duplicate info index");
    prev = i;
  }
}

void polar_transform(BitBlock& bits) {
  const int n_bits = static_cast<int>(bits.size());
  if (!is_power_of_two(n_bits)) throw ValidationError("polar_transform: length must be a power of two");
  for (int step = 1; step < n_bits; step <<= 1) {
    for (int base = 0; base < n_bits; base += 2 * step) {
      for (int j = base; j < base + step; ++j) bits[j] ^= bits[j + step];
    }
  }
}

BitBlock encode(const CodeSpec& spec, const BitBlock& info_bits) {
  if (info_bits.size() != static_cast<size_t>(spec.info_count())) {
    throw ValidationError("encode: info_bits length must equal K");
  }
  BitBlock u = spec.frozen_values;
  for (size_t a = 0; a < spec.info_set.size(); ++a) {
    u[static_cast<size_t>(spec.info_set[a] - 1)] = info_bits[a] & 1u;
  }
  polar_transform(u);
  return u;
}

uint64_t generator_row_mask(int block_length, int row) {
  if (block_length < 1 || block_length > 64) throw ValidationError("generator_row_mask: N must be in 1..64");
  if (row < 1 || row > block_length) throw ValidationError("generator_row_mask: row out of 1..N");
  // F_N[r][c] = 1 iff the support of (c-1) is contained in the support of (r-1).
  uint64_t mask = 0;
  const uint64_t r = static_cast<uint64_t>(row - 1);
  for (int c = 0; c < block_length; ++c) {
    if ((static_cast<uint64_t>(c) & ~r) == 0) mask |= (uint64_t{1} << c);
  }
  return mask;
}

void for_each_codeword(const SubcodeId& id, const std::function<void(uint64_t)>& visit,
                       const EnumerationGuard& guard) {
  const int n_len = id.block_length;
  if (!is_power_of_two(n_len)) throw ValidationError("subcode: N must be a power of two");
  if (id.row < 1 || id.row > n_len) throw ValidationError("subcode: row out of 1..N");
  if (n_len > guard.max_block_length) {
    throw ValidationError("subcode enumeration guard: N = " + std::to_string(n_len) + " exceeds " +
                          std::to_string(guard.max_block_length));
  }
  if (n_len - id.row > guard.max_free_bits) {
    throw ValidationError("subcode enumeration guard: N - i = " + std::to_string(n_len - id.row) +
                          " exceeds " + std::to_string(guard.max_free_bits));
  }

  // Polar subcode: fixed row i plus the span of rows i+1..N.
  // Subcode: span of rows i..N.
  uint64_t base = 0;
  std::vector<uint64_t> free_rows;
  if (id.kind == SubcodeKind::polar_subcode) {
    base = generator_row_mask(n_len, id.row);
    for (int r = id.row + 1; r <= n_len; ++r) free_rows.push_back(generator_row_mask(n_len, r));
  } else {
    for (int r = id.row; r <= n_len; ++r) free_rows.push_back(generator_row_mask(n_len, r));
  }

  uint64_t word = base;
  visit(word);
  const uint64_t count = uint64_t{1} << free_rows.size();
  for (uint64_t t = 1; t < count; ++t) {
    word ^= free_rows[static_cast<size_t>(std::countr_zero(t))];
    visit(word);
  }
}

std::vector<BitBlock> enumerate_codewords(const SubcodeId& id, const EnumerationGuard& guard) {
  std::vector<BitBlock> out;
  const int n_len = id.block_length;
  for_each_codeword(
      id,
      [&](uint64_t word) {
        BitBlock bits(static_cast<size_t>(n_len));
        for (int c = 0; c < n_len; ++c) bits[c] = static_cast<uint8_t>((word >> c) & 1u);
        out.push_back(std::move(bits));
      },
      guard);
  return out;
}

std::map<std::vector<int>, uint64_t> brute_force_split_spectrum(const SubcodeId& id, int num_blocks,
                                                                const EnumerationGuard& guard) {
  const int n_len = id.block_length;
  if (num_blocks < 1 || n_len % num_blocks != 0) {
    throw ValidationError("brute_force_split_spectrum: L must divide N");
  }
  const int m = n_len / num_blocks;
  std::vector<uint64_t> block_masks(static_cast<size_t>(num_blocks));
  const uint64_t low = (m == 64) ? ~uint64_t{0} : ((uint64_t{1} << m) - 1);
  for (int l = 0; l < num_blocks; ++l) block_masks[l] = low << (l * m);

  std::map<std::vector<int>, uint64_t> tally;
  std::vector<int> key(static_cast<size_t>(num_blocks));
  for_each_codeword(
      id,
      [&](uint64_t word) {
        for (int l = 0; l < num_blocks; ++l) {
          key[l] = std::popcount(word & block_masks[l]);
        }
        ++tally[key];
      },
      guard);
  return tally;
}

}  // namespace polarfade
