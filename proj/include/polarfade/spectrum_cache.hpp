#pragma once

#include <filesystem>
#include <string>

#include "polarfade/spectrum.hpp"

namespace polarfade {

// Versioned JSON cache of one table. Only the polar-subcode enumerators are
// written; subcode rows are the exact suffix sums S^(i) = sum_{m>=i} A^(m)
// plus the zero codeword, so the round trip is lossless. The payload is
// hashed (SHA-256 of the canonical serialization without the hash field) and
// the digest is stored alongside. Serialization is canonical: fixed key
// order, entries sorted, no whitespace; saving a loaded table reproduces the
// file byte for byte.
void save_split_table(const SplitSpectrumTable& table, const std::filesystem::path& path);
SplitSpectrumTable load_split_table(const std::filesystem::path& path);

void save_ordinary_table(const SpectrumTable& table, const std::filesystem::path& path);
SpectrumTable load_ordinary_table(const std::filesystem::path& path);

std::string split_cache_filename(int block_length);
std::string ordinary_cache_filename(int block_length);

// Lazily builds or loads tables. With a cache directory, previously built
// tables are loaded from disk and new ones are written back; without one the
// store is memory-only.
class TableStore {
 public:
  explicit TableStore(std::filesystem::path cache_dir = {}, BuildLimits limits = {});

  const SplitSpectrumTable& split(int block_length);
  const SpectrumTable& ordinary(int block_length);

  // Builds every table up to the limits and persists them (if a cache
  // directory is configured). Returns the number of files written.
  int build_all(const BuildLimits& limits);

  const BuildLimits& limits() const { return limits_; }

 private:
  void adopt(TableSet&& fresh);
  bool try_load_split(int block_length);
  bool try_load_ordinary(int block_length);
  void persist_split(int block_length);
  void persist_ordinary(int block_length);

  std::filesystem::path cache_dir_;
  BuildLimits limits_;
  TableSet tables_;
};

}  // namespace polarfade
