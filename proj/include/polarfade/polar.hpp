#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "polarfade/errors.hpp"

namespace polarfade {

using BitBlock = std::vector<uint8_t>;

// (N, K, A) code description. All public indices are 1-based, matching the
// generator-matrix row convention; no bit-reversal is applied anywhere in
// this library (the transform is the plain n-fold Kronecker power, the same
// form 5G uses).
struct CodeSpec {
  int n = 0;                        // N = 2^n
  int block_length = 0;             // N
  std::vector<int> info_set;        // sorted, 1-based, size K
  std::vector<uint8_t> frozen_values;  // length N; consulted only outside info_set

  static CodeSpec make(int block_length, std::vector<int> info_set,
                       std::vector<uint8_t> frozen_values = {});

  int info_count() const { return static_cast<int>(info_set.size()); }
  bool is_info(int i) const;  // i is 1-based
  void validate() const;
};

// In-place u -> u * F_N over GF(2), natural (non-bit-reversed) order.
// Involutory, so it is also its own inverse.
void polar_transform(BitBlock& bits);

// Places info_bits on the information set (frozen values elsewhere) and
// applies the polar transform.
BitBlock encode(const CodeSpec& spec, const BitBlock& info_bits);

enum class SubcodeKind { subcode, polar_subcode };

struct SubcodeId {
  int block_length = 0;  // N
  int row = 0;           // i, 1-based
  SubcodeKind kind = SubcodeKind::polar_subcode;
};

// Exhaustive-enumeration size guard. Thresholds keep the oracle in the
// seconds range; both are overridable.
struct EnumerationGuard {
  int max_block_length = 32;
  int max_free_bits = 26;  // N - i
};

// Streams every codeword of the subcode C_N^(i) (2^(N-i+1) words) or the
// polar subcode D_N^(i) (2^(N-i) words). Single consumer; deterministic
// Gray-code order.
void for_each_codeword(const SubcodeId& id, const std::function<void(uint64_t)>& visit,
                       const EnumerationGuard& guard = {});

// Same stream materialized as bit vectors, for small cases and tests.
std::vector<BitBlock> enumerate_codewords(const SubcodeId& id, const EnumerationGuard& guard = {});

// Exhaustive split-weight oracle: partitions each codeword into L equal
// blocks and tallies the block-wise Hamming weight vectors. The zero
// codeword of a subcode lands on the all-zero vector.
std::map<std::vector<int>, uint64_t> brute_force_split_spectrum(
    const SubcodeId& id, int num_blocks, const EnumerationGuard& guard = {});

// Row i of F_N as a bit mask (bit c-1 set iff column c is one). N <= 64.
uint64_t generator_row_mask(int block_length, int row);

}  // namespace polarfade
