#include "polarfade/spectrum_cache.hpp"

#include <bit>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "polarfade/sha256.hpp"

namespace polarfade {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kMagic = "polar-spectrum-cache";
constexpr int kVersion = 1;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cache: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError("cache: cannot write " + path.string());
  out << data;
}

std::string finalize_with_digest(ordered_json doc) {
  const std::string canonical = doc.dump();
  doc["sha256"] = sha256_hex(canonical);
  return doc.dump();
}

ordered_json parse_and_check(const std::string& raw, const char* expected_kind) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(raw);
  } catch (const std::exception& e) {
    throw CacheError(std::string("cache: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format") || doc["format"] != kMagic) {
    throw CacheError("cache: bad magic (expected \"" + std::string(kMagic) + "\")");
  }
  if (!doc.contains("version") || doc["version"] != kVersion) {
    throw CacheError("cache: unsupported version");
  }
  if (!doc.contains("kind") || doc["kind"] != expected_kind) {
    throw CacheError(std::string("cache: wrong table kind (expected \"") + expected_kind + "\")");
  }
  if (!doc.contains("sha256") || !doc.contains("entries") || !doc.contains("N")) {
    throw CacheError("cache: missing required field");
  }
  const std::string stored = doc["sha256"];
  doc.erase("sha256");
  if (sha256_hex(doc.dump()) != stored) {
    throw CacheError("cache: checksum failure (file corrupted or edited)");
  }
  return doc;
}

std::string to_decimal(const BigInt& v) { return v.get_str(); }

BigInt from_decimal(const std::string& s) {
  BigInt v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0) {
    throw CacheError("cache: bad decimal count \"" + s + "\"");
  }
  return v;
}

}  // namespace

std::string split_cache_filename(int block_length) {
  return "split_N" + std::to_string(block_length) + ".json";
}

std::string ordinary_cache_filename(int block_length) {
  return "spectrum_N" + std::to_string(block_length) + ".json";
}

void save_split_table(const SplitSpectrumTable& table, const std::filesystem::path& path) {
  ordered_json doc;
  doc["format"] = kMagic;
  doc["version"] = kVersion;
  doc["N"] = table.block_length;
  doc["kind"] = "split";
  ordered_json entries = ordered_json::array();
  for (int i = 1; i <= table.block_length; ++i) {
    for (const auto& e : table.a(i).entries) {
      entries.push_back(ordered_json::array({i, e.j, e.k, to_decimal(e.count)}));
    }
  }
  doc["entries"] = std::move(entries);
  write_file(path, finalize_with_digest(std::move(doc)));
}

SplitSpectrumTable load_split_table(const std::filesystem::path& path) {
  ordered_json doc = parse_and_check(read_file(path), "split");
  SplitSpectrumTable table;
  table.block_length = doc["N"].get<int>();
  if (table.block_length < 2 || std::popcount(static_cast<unsigned>(table.block_length)) != 1) {
    throw CacheError("cache: invalid N");
  }
  table.half = table.block_length / 2;
  if (table.block_length == 2) table.half = 1;
  table.a_rows.resize(static_cast<size_t>(table.block_length));
  table.s_rows.resize(static_cast<size_t>(table.block_length));
  for (const auto& e : doc["entries"]) {
    if (!e.is_array() || e.size() != 4) throw CacheError("cache: bad split entry shape");
    const int i = e[0].get<int>();
    const int j = e[1].get<int>();
    const int k = e[2].get<int>();
    if (i < 1 || i > table.block_length || j < 0 || j > table.half || k < 0 || k > table.half) {
      throw CacheError("cache: split entry out of range");
    }
    table.a_rows[static_cast<size_t>(i - 1)].entries.push_back(
        SplitEntry{j, k, from_decimal(e[3].get<std::string>())});
  }
  // Subcode rows by suffix accumulation (chain identity), zero word included.
  std::map<std::pair<int, int>, BigInt> running;
  running[{0, 0}] = 1;
  for (int i = table.block_length; i >= 1; --i) {
    for (const auto& e : table.a_rows[static_cast<size_t>(i - 1)].entries) {
      running[{e.j, e.k}] += e.count;
    }
    SplitRow& s_row = table.s_rows[static_cast<size_t>(i - 1)];
    for (const auto& [jk, c] : running) s_row.entries.push_back(SplitEntry{jk.first, jk.second, c});
  }
  return table;
}

void save_ordinary_table(const SpectrumTable& table, const std::filesystem::path& path) {
  ordered_json doc;
  doc["format"] = kMagic;
  doc["version"] = kVersion;
  doc["N"] = table.block_length;
  doc["kind"] = "1d";
  ordered_json entries = ordered_json::array();
  for (int i = 1; i <= table.block_length; ++i) {
    for (const auto& e : table.a(i).entries) {
      entries.push_back(ordered_json::array({i, e.d, to_decimal(e.count)}));
    }
  }
  doc["entries"] = std::move(entries);
  write_file(path, finalize_with_digest(std::move(doc)));
}

SpectrumTable load_ordinary_table(const std::filesystem::path& path) {
  ordered_json doc = parse_and_check(read_file(path), "1d");
  SpectrumTable table;
  table.block_length = doc["N"].get<int>();
  if (table.block_length < 2 || std::popcount(static_cast<unsigned>(table.block_length)) != 1) {
    throw CacheError("cache: invalid N");
  }
  table.a_rows.resize(static_cast<size_t>(table.block_length));
  table.s_rows.resize(static_cast<size_t>(table.block_length));
  for (const auto& e : doc["entries"]) {
    if (!e.is_array() || e.size() != 3) throw CacheError("cache: bad 1d entry shape");
    const int i = e[0].get<int>();
    const int d = e[1].get<int>();
    if (i < 1 || i > table.block_length || d < 0 || d > table.block_length) {
      throw CacheError("cache: 1d entry out of range");
    }
    table.a_rows[static_cast<size_t>(i - 1)].entries.push_back(
        WeightEntry{d, from_decimal(e[2].get<std::string>())});
  }
  std::map<int, BigInt> running;
  running[0] = 1;
  for (int i = table.block_length; i >= 1; --i) {
    for (const auto& e : table.a_rows[static_cast<size_t>(i - 1)].entries) running[e.d] += e.count;
    WeightRow& s_row = table.s_rows[static_cast<size_t>(i - 1)];
    for (const auto& [d, c] : running) s_row.entries.push_back(WeightEntry{d, c});
  }
  return table;
}

TableStore::TableStore(std::filesystem::path cache_dir, BuildLimits limits)
    : cache_dir_(std::move(cache_dir)), limits_(limits) {}

bool TableStore::try_load_split(int block_length) {
  if (cache_dir_.empty()) return false;
  const auto path = cache_dir_ / split_cache_filename(block_length);
  if (!std::filesystem::exists(path)) return false;
  tables_.split[block_length] = load_split_table(path);
  return true;
}

bool TableStore::try_load_ordinary(int block_length) {
  if (cache_dir_.empty()) return false;
  const auto path = cache_dir_ / ordinary_cache_filename(block_length);
  if (!std::filesystem::exists(path)) return false;
  tables_.ordinary[block_length] = load_ordinary_table(path);
  return true;
}

void TableStore::persist_split(int block_length) {
  if (cache_dir_.empty()) return;
  std::filesystem::create_directories(cache_dir_);
  const auto path = cache_dir_ / split_cache_filename(block_length);
  if (!std::filesystem::exists(path)) save_split_table(tables_.split_for(block_length), path);
}

void TableStore::persist_ordinary(int block_length) {
  if (cache_dir_.empty()) return;
  std::filesystem::create_directories(cache_dir_);
  const auto path = cache_dir_ / ordinary_cache_filename(block_length);
  if (!std::filesystem::exists(path)) save_ordinary_table(tables_.ordinary_for(block_length), path);
}

void TableStore::adopt(TableSet&& fresh) {
  for (auto& [n, t] : fresh.split) {
    if (!tables_.has_split(n)) {
      tables_.split[n] = std::move(t);
      persist_split(n);
    }
  }
  for (auto& [n, t] : fresh.ordinary) {
    if (!tables_.has_ordinary(n)) {
      tables_.ordinary[n] = std::move(t);
      persist_ordinary(n);
    }
  }
}

const SplitSpectrumTable& TableStore::split(int block_length) {
  if (tables_.has_split(block_length)) return tables_.split_for(block_length);
  if (try_load_split(block_length)) return tables_.split_for(block_length);
  const int n_exp = std::countr_zero(static_cast<unsigned>(block_length));
  if ((1 << n_exp) != block_length) throw ValidationError("split table: N must be a power of two");
  if (n_exp > limits_.n_max_split) {
    throw ValidationError("split table: N=" + std::to_string(block_length) +
                          " exceeds the configured split ceiling 2^" +
                          std::to_string(limits_.n_max_split));
  }
  adopt(build_tables(BuildLimits{n_exp, n_exp}));
  return tables_.split_for(block_length);
}

const SpectrumTable& TableStore::ordinary(int block_length) {
  if (tables_.has_ordinary(block_length)) return tables_.ordinary_for(block_length);
  if (try_load_ordinary(block_length)) return tables_.ordinary_for(block_length);
  const int n_exp = std::countr_zero(static_cast<unsigned>(block_length));
  if ((1 << n_exp) != block_length) throw ValidationError("spectrum table: N must be a power of two");
  if (n_exp > limits_.n_max_1d) {
    throw ValidationError("spectrum table: N=" + std::to_string(block_length) +
                          " exceeds the configured ceiling 2^" + std::to_string(limits_.n_max_1d));
  }
  adopt(build_tables(BuildLimits{std::min(n_exp, limits_.n_max_split), n_exp}));
  return tables_.ordinary_for(block_length);
}

int TableStore::build_all(const BuildLimits& limits) {
  adopt(build_tables(limits));
  int written = 0;
  if (!cache_dir_.empty()) {
    for (const auto& [n, t] : tables_.split) {
      (void)t;
      if (std::filesystem::exists(cache_dir_ / split_cache_filename(n))) ++written;
    }
    for (const auto& [n, t] : tables_.ordinary) {
      (void)t;
      if (std::filesystem::exists(cache_dir_ / ordinary_cache_filename(n))) ++written;
    }
  }
  return written;
}

}  // namespace polarfade
