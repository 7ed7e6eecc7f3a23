#pragma once

#include <map>
#include <vector>

#include "polarfade/combinatorics.hpp"
#include "polarfade/errors.hpp"

namespace polarfade {

// Sparse 2-split weight row: entries sorted by (j, k), zero counts omitted.
struct SplitEntry {
  int j = 0;
  int k = 0;
  BigInt count;
};

struct SplitRow {
  std::vector<SplitEntry> entries;

  const BigInt* find(int j, int k) const;
  BigInt get(int j, int k) const;
  BigInt total() const;
};

// Sparse 1-D weight row: entries sorted by d.
struct WeightEntry {
  int d = 0;
  BigInt count;
};

struct WeightRow {
  std::vector<WeightEntry> entries;

  const BigInt* find(int d) const;
  BigInt get(int d) const;
  BigInt total() const;
};

// Ordinary polar spectra: A_N^(i)(d) for the polar subcodes and S_N^(i)(d)
// for the subcodes, rows i = 1..N.
struct SpectrumTable {
  int block_length = 0;
  std::vector<WeightRow> a_rows;
  std::vector<WeightRow> s_rows;

  const WeightRow& a(int i) const;
  const WeightRow& s(int i) const;
  // Smallest d with A_N^(i)(d) > 0.
  int d_min(int i) const;
};

// 2-split spectra A_N^(i)(j,k) / S_N^(i)(j,k); each half carries 0..N/2.
struct SplitSpectrumTable {
  int block_length = 0;
  int half = 0;
  std::vector<SplitRow> a_rows;
  std::vector<SplitRow> s_rows;

  const SplitRow& a(int i) const;
  const SplitRow& s(int i) const;
  int d_min(int i) const;
};

// Solves the general MacWilliams identities for the split weight
// distribution of the subcode C_N^(i), given the full split distribution of
// its dual C_N^(N+2-i) (zero codeword included). The identity is treated as
// a separable 2-D descending binomial-moment transform: the dual side gives
// the moments directly, the power-of-two factor is applied exactly (shift
// when the exponent is non-negative, checked exact division otherwise), and
// the unknown distribution is recovered by per-axis binomial inversion.
// Any negative or fractional intermediate aborts with TripwireError.
SplitRow solve_general_macwilliams(const SplitRow& dual_s, int block_length, int row,
                                   const BinomialTable& binom);

// 1-D form of the same identity, used to extend ordinary spectra past the
// split-table ceiling.
WeightRow solve_macwilliams_1d(const WeightRow& dual_s, int block_length, int row,
                               const BinomialTable& binom);

struct TableSet {
  std::map<int, SpectrumTable> ordinary;        // by N
  std::map<int, SplitSpectrumTable> split;      // by N

  const SpectrumTable& ordinary_for(int block_length) const;
  const SplitSpectrumTable& split_for(int block_length) const;
  bool has_split(int block_length) const { return split.count(block_length) > 0; }
  bool has_ordinary(int block_length) const { return ordinary.count(block_length) > 0; }
};

// Table ceilings are configuration, not constants. Split tables are the
// O(N^5) part; ordinary tables stay cheap much further.
struct BuildLimits {
  int n_max_split = 8;  // split tables up to N = 256
  int n_max_1d = 10;    // ordinary tables up to N = 1024
};

// Doubling enumeration: for each N -> 2N, rows N+1..2N are diagonal copies
// of the length-N rows (equal partition), rows N..2 come from the general
// MacWilliams identities against the already-known duals, and row 1 is the
// full space. Ordinary tables are the marginals of split tables up to the
// split ceiling and continue with the 1-D identity above it.
TableSet build_tables(const BuildLimits& limits);
TableSet build_tables(int n_max);  // split and 1-D share the ceiling

// Marginalizes a split table over j + k = d.
SpectrumTable marginalize(const SplitSpectrumTable& split);

}  // namespace polarfade
