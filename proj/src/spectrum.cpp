#include "polarfade/spectrum.hpp"

#include <algorithm>
#include <string>

namespace polarfade {

namespace {

std::string cell_name(int block_length, int row, int j, int k) {
  return "N=" + std::to_string(block_length) + " i=" + std::to_string(row) + " (" +
         std::to_string(j) + "," + std::to_string(k) + ")";
}

// Exact multiply by 2^e; e < 0 requires divisibility and trips otherwise.
void scale_pow2(BigInt& value, long e, const std::string& where) {
  if (value == 0) return;
  if (e >= 0) {
    mpz_mul_2exp(value.get_mpz_t(), value.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return;
  }
  const auto shift = static_cast<mp_bitcnt_t>(-e);
  if (mpz_scan1(value.get_mpz_t(), 0) < shift) {
    throw TripwireError("macwilliams: non-integer power-of-two scaling at " + where);
  }
  mpz_tdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), shift);
}

BigInt pow2(int e) {
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return v;
}

}  // namespace

const BigInt* SplitRow::find(int j, int k) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair<int, int>{j, k},
                             [](const SplitEntry& e, const std::pair<int, int>& key) {
                               return std::pair<int, int>{e.j, e.k} < key;
                             });
  if (it == entries.end() || it->j != j || it->k != k) return nullptr;
  return &it->count;
}

BigInt SplitRow::get(int j, int k) const {
  const BigInt* p = find(j, k);
  return p ? *p : BigInt{0};
}

BigInt SplitRow::total() const {
  BigInt sum = 0;
  for (const auto& e : entries) sum += e.count;
  return sum;
}

const BigInt* WeightRow::find(int d) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), d,
                             [](const WeightEntry& e, int key) { return e.d < key; });
  if (it == entries.end() || it->d != d) return nullptr;
  return &it->count;
}

BigInt WeightRow::get(int d) const {
  const BigInt* p = find(d);
  return p ? *p : BigInt{0};
}

BigInt WeightRow::total() const {
  BigInt sum = 0;
  for (const auto& e : entries) sum += e.count;
  return sum;
}

const WeightRow& SpectrumTable::a(int i) const {
  if (i < 1 || i > block_length) throw ValidationError("SpectrumTable: row out of 1..N");
  return a_rows[static_cast<size_t>(i - 1)];
}

const WeightRow& SpectrumTable::s(int i) const {
  if (i < 1 || i > block_length) throw ValidationError("SpectrumTable: row out of 1..N");
  return s_rows[static_cast<size_t>(i - 1)];
}

int SpectrumTable::d_min(int i) const {
  for (const auto& e : a(i).entries) {
    if (e.d > 0 && e.count > 0) return e.d;
  }
  throw TripwireError("SpectrumTable: empty polar-subcode row i=" + std::to_string(i));
}

const SplitRow& SplitSpectrumTable::a(int i) const {
  if (i < 1 || i > block_length) throw ValidationError("SplitSpectrumTable: row out of 1..N");
  return a_rows[static_cast<size_t>(i - 1)];
}

const SplitRow& SplitSpectrumTable::s(int i) const {
  if (i < 1 || i > block_length) throw ValidationError("SplitSpectrumTable: row out of 1..N");
  return s_rows[static_cast<size_t>(i - 1)];
}

int SplitSpectrumTable::d_min(int i) const {
  int best = -1;
  for (const auto& e : a(i).entries) {
    int d = e.j + e.k;
    if (d > 0 && e.count > 0 && (best < 0 || d < best)) best = d;
  }
  if (best < 0) throw TripwireError("SplitSpectrumTable: empty polar-subcode row i=" + std::to_string(i));
  return best;
}

const SpectrumTable& TableSet::ordinary_for(int block_length) const {
  auto it = ordinary.find(block_length);
  if (it == ordinary.end()) {
    throw ValidationError("no ordinary spectrum table for N=" + std::to_string(block_length));
  }
  return it->second;
}

const SplitSpectrumTable& TableSet::split_for(int block_length) const {
  auto it = split.find(block_length);
  if (it == split.end()) {
    throw ValidationError("no split spectrum table for N=" + std::to_string(block_length));
  }
  return it->second;
}

SplitRow solve_general_macwilliams(const SplitRow& dual_s, int block_length, int row,
                                   const BinomialTable& binom) {
  if (block_length < 4 || block_length % 2 != 0) {
    throw ValidationError("macwilliams: block length must be even and >= 4");
  }
  if (row < 2 || row > block_length) throw ValidationError("macwilliams: row out of 2..N");
  const int half = block_length / 2;
  const size_t w = static_cast<size_t>(half) + 1;
  auto idx = [w](int r, int c) { return static_cast<size_t>(r) * w + static_cast<size_t>(c); };

  // Binomial moments of the known dual distribution:
  //   T(s,t) = sum_{j,k} C(half-j, s) C(half-k, t) S_dual(j,k).
  std::vector<BigInt> moments(w * w);
  std::vector<BigInt> col_factor(w);
  for (const auto& e : dual_s.entries) {
    const int rj = half - e.j;
    const int rk = half - e.k;
    for (int t = 0; t <= rk; ++t) col_factor[static_cast<size_t>(t)] = binom(rk, t) * e.count;
    for (int s = 0; s <= rj; ++s) {
      const BigInt& bs = binom(rj, s);
      BigInt* out = &moments[idx(s, 0)];
      for (int t = 0; t <= rk; ++t) {
        mpz_addmul(out[t].get_mpz_t(), bs.get_mpz_t(), col_factor[static_cast<size_t>(t)].get_mpz_t());
      }
    }
  }

  // Moments of the unknown distribution:
  //   M(s',t') = 2^(N+1-i-s'-t') T(half-s', half-t').
  std::vector<BigInt> unknown(w * w);
  for (int sp = 0; sp <= half; ++sp) {
    for (int tp = 0; tp <= half; ++tp) {
      BigInt v = moments[idx(half - sp, half - tp)];
      scale_pow2(v, block_length + 1 - row - sp - tp,
                 cell_name(block_length, row, sp, tp) + " moment");
      unknown[idx(sp, tp)] = std::move(v);
    }
  }

  // Per-axis binomial inversion: with a = half-j, b = half-k and
  // U(a,b) = S(half-a, half-b),
  //   M(s',t') = sum_{a,b} C(a,s') C(b,t') U(a,b)
  //   U(a,b)   = sum_{s'>=a, t'>=b} (-1)^(s'+t'-a-b) C(s',a) C(t',b) M(s',t').
  std::vector<BigInt> partial(w * w);
  for (int sp = 0; sp <= half; ++sp) {
    for (int b = 0; b <= half; ++b) {
      BigInt acc = 0;
      for (int tp = b; tp <= half; ++tp) {
        const BigInt& c = binom(tp, b);
        const BigInt& m = unknown[idx(sp, tp)];
        if (((tp - b) & 1) == 0) {
          mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        } else {
          mpz_submul(acc.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        }
      }
      partial[idx(sp, b)] = std::move(acc);
    }
  }

  SplitRow result;
  BigInt total = 0;
  for (int a = half; a >= 0; --a) {  // j = half - a ascending
    for (int b = half; b >= 0; --b) {
      BigInt acc = 0;
      for (int sp = a; sp <= half; ++sp) {
        const BigInt& c = binom(sp, a);
        const BigInt& g = partial[idx(sp, b)];
        if (((sp - a) & 1) == 0) {
          mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        } else {
          mpz_submul(acc.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
      }
      if (acc < 0) {
        throw TripwireError("macwilliams: negative count at " +
                            cell_name(block_length, row, half - a, half - b));
      }
      if (acc != 0) {
        total += acc;
        result.entries.push_back(SplitEntry{half - a, half - b, std::move(acc)});
      }
    }
  }
  if (total != pow2(block_length - row + 1)) {
    throw TripwireError("macwilliams: split total mismatch for N=" + std::to_string(block_length) +
                        " i=" + std::to_string(row));
  }
  return result;
}

WeightRow solve_macwilliams_1d(const WeightRow& dual_s, int block_length, int row,
                               const BinomialTable& binom) {
  if (row < 2 || row > block_length) throw ValidationError("macwilliams: row out of 2..N");
  const size_t w = static_cast<size_t>(block_length) + 1;

  std::vector<BigInt> moments(w);
  for (const auto& e : dual_s.entries) {
    const int rd = block_length - e.d;
    for (int s = 0; s <= rd; ++s) {
      mpz_addmul(moments[static_cast<size_t>(s)].get_mpz_t(), binom(rd, s).get_mpz_t(),
                 e.count.get_mpz_t());
    }
  }

  std::vector<BigInt> unknown(w);
  for (int sp = 0; sp <= block_length; ++sp) {
    BigInt v = moments[static_cast<size_t>(block_length - sp)];
    scale_pow2(v, block_length + 1 - row - sp,
               "N=" + std::to_string(block_length) + " i=" + std::to_string(row) + " s'=" +
                   std::to_string(sp));
    unknown[static_cast<size_t>(sp)] = std::move(v);
  }

  WeightRow result;
  BigInt total = 0;
  for (int a = block_length; a >= 0; --a) {  // d = N - a ascending
    BigInt acc = 0;
    for (int sp = a; sp <= block_length; ++sp) {
      const BigInt& c = binom(sp, a);
      const BigInt& m = unknown[static_cast<size_t>(sp)];
      if (((sp - a) & 1) == 0) {
        mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
      } else {
        mpz_submul(acc.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
      }
    }
    if (acc < 0) {
      throw TripwireError("macwilliams(1d): negative count at N=" + std::to_string(block_length) +
                          " i=" + std::to_string(row) + " d=" + std::to_string(block_length - a));
    }
    if (acc != 0) {
      total += acc;
      result.entries.push_back(WeightEntry{block_length - a, std::move(acc)});
    }
  }
  if (total != pow2(block_length - row + 1)) {
    throw TripwireError("macwilliams(1d): total mismatch for N=" + std::to_string(block_length) +
                        " i=" + std::to_string(row));
  }
  return result;
}

namespace {

// S^(l) - S^(l+1), entrywise; the chain identity guarantees non-negative.
SplitRow subtract_split(const SplitRow& s_l, const SplitRow& s_next, int block_length, int row) {
  SplitRow out;
  size_t a = 0;
  size_t b = 0;
  auto key = [](const SplitEntry& e) { return std::pair<int, int>{e.j, e.k}; };
  while (a < s_l.entries.size() || b < s_next.entries.size()) {
    if (b == s_next.entries.size() ||
        (a < s_l.entries.size() && key(s_l.entries[a]) < key(s_next.entries[b]))) {
      out.entries.push_back(s_l.entries[a]);
      ++a;
    } else if (a == s_l.entries.size() || key(s_next.entries[b]) < key(s_l.entries[a])) {
      throw TripwireError("spectrum chain: negative polar count at " +
                          cell_name(block_length, row, s_next.entries[b].j, s_next.entries[b].k));
    } else {
      BigInt diff = s_l.entries[a].count - s_next.entries[b].count;
      if (diff < 0) {
        throw TripwireError("spectrum chain: negative polar count at " +
                            cell_name(block_length, row, s_l.entries[a].j, s_l.entries[a].k));
      }
      if (diff != 0) out.entries.push_back(SplitEntry{s_l.entries[a].j, s_l.entries[a].k, std::move(diff)});
      ++a;
      ++b;
    }
  }
  return out;
}

WeightRow subtract_1d(const WeightRow& s_l, const WeightRow& s_next, int block_length, int row) {
  WeightRow out;
  size_t a = 0;
  size_t b = 0;
  while (a < s_l.entries.size() || b < s_next.entries.size()) {
    if (b == s_next.entries.size() ||
        (a < s_l.entries.size() && s_l.entries[a].d < s_next.entries[b].d)) {
      out.entries.push_back(s_l.entries[a]);
      ++a;
    } else if (a == s_l.entries.size() || s_next.entries[b].d < s_l.entries[a].d) {
      throw TripwireError("spectrum chain(1d): negative polar count at N=" +
                          std::to_string(block_length) + " i=" + std::to_string(row));
    } else {
      BigInt diff = s_l.entries[a].count - s_next.entries[b].count;
      if (diff < 0) {
        throw TripwireError("spectrum chain(1d): negative polar count at N=" +
                            std::to_string(block_length) + " i=" + std::to_string(row));
      }
      if (diff != 0) out.entries.push_back(WeightEntry{s_l.entries[a].d, std::move(diff)});
      ++a;
      ++b;
    }
  }
  return out;
}

SpectrumTable base_ordinary() {
  SpectrumTable t;
  t.block_length = 2;
  t.a_rows.resize(2);
  t.s_rows.resize(2);
  t.s_rows[0].entries = {{0, 1}, {1, 2}, {2, 1}};  // full space
  t.s_rows[1].entries = {{0, 1}, {2, 1}};          // repetition code
  t.a_rows[0].entries = {{1, 2}};
  t.a_rows[1].entries = {{2, 1}};
  return t;
}

SplitSpectrumTable base_split() {
  SplitSpectrumTable t;
  t.block_length = 2;
  t.half = 1;
  t.a_rows.resize(2);
  t.s_rows.resize(2);
  t.s_rows[0].entries = {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  t.s_rows[1].entries = {{0, 0, 1}, {1, 1, 1}};
  t.a_rows[0].entries = {{0, 1, 1}, {1, 0, 1}};
  t.a_rows[1].entries = {{1, 1, 1}};
  return t;
}

// Length N -> 2N doubling of split tables from the length-N ordinary table.
SplitSpectrumTable double_split(const SpectrumTable& prev, const BinomialTable& binom) {
  const int n_prev = prev.block_length;
  const int n_cur = 2 * n_prev;
  SplitSpectrumTable t;
  t.block_length = n_cur;
  t.half = n_prev;
  t.a_rows.resize(static_cast<size_t>(n_cur));
  t.s_rows.resize(static_cast<size_t>(n_cur));

  // Rows N+1..2N: each codeword is (c, c), so mass sits on the diagonal.
  for (int l = n_prev + 1; l <= n_cur; ++l) {
    SplitRow& a_row = t.a_rows[static_cast<size_t>(l - 1)];
    SplitRow& s_row = t.s_rows[static_cast<size_t>(l - 1)];
    for (const auto& e : prev.a(l - n_prev).entries) a_row.entries.push_back({e.d, e.d, e.count});
    for (const auto& e : prev.s(l - n_prev).entries) s_row.entries.push_back({e.d, e.d, e.count});
  }

  // Rows N..2: general MacWilliams against the known dual row 2N+2-l.
  for (int l = n_prev; l >= 2; --l) {
    const SplitRow& dual = t.s_rows[static_cast<size_t>(2 * n_prev + 2 - l - 1)];
    t.s_rows[static_cast<size_t>(l - 1)] = solve_general_macwilliams(dual, n_cur, l, binom);
    t.a_rows[static_cast<size_t>(l - 1)] = subtract_split(
        t.s_rows[static_cast<size_t>(l - 1)], t.s_rows[static_cast<size_t>(l)], n_cur, l);
  }

  // Row 1 is the full space.
  SplitRow full;
  for (int j = 0; j <= n_prev; ++j) {
    for (int k = 0; k <= n_prev; ++k) {
      full.entries.push_back(SplitEntry{j, k, binom(n_prev, j) * binom(n_prev, k)});
    }
  }
  t.s_rows[0] = std::move(full);
  t.a_rows[0] = subtract_split(t.s_rows[0], t.s_rows[1], n_cur, 1);
  return t;
}

SpectrumTable double_1d(const SpectrumTable& prev, const BinomialTable& binom) {
  const int n_prev = prev.block_length;
  const int n_cur = 2 * n_prev;
  SpectrumTable t;
  t.block_length = n_cur;
  t.a_rows.resize(static_cast<size_t>(n_cur));
  t.s_rows.resize(static_cast<size_t>(n_cur));

  for (int l = n_prev + 1; l <= n_cur; ++l) {
    WeightRow& a_row = t.a_rows[static_cast<size_t>(l - 1)];
    WeightRow& s_row = t.s_rows[static_cast<size_t>(l - 1)];
    for (const auto& e : prev.a(l - n_prev).entries) a_row.entries.push_back({2 * e.d, e.count});
    for (const auto& e : prev.s(l - n_prev).entries) s_row.entries.push_back({2 * e.d, e.count});
  }

  for (int l = n_prev; l >= 2; --l) {
    const WeightRow& dual = t.s_rows[static_cast<size_t>(2 * n_prev + 2 - l - 1)];
    t.s_rows[static_cast<size_t>(l - 1)] = solve_macwilliams_1d(dual, n_cur, l, binom);
    t.a_rows[static_cast<size_t>(l - 1)] =
        subtract_1d(t.s_rows[static_cast<size_t>(l - 1)], t.s_rows[static_cast<size_t>(l)], n_cur, l);
  }

  WeightRow full;
  for (int d = 0; d <= n_cur; ++d) full.entries.push_back(WeightEntry{d, binom(n_cur, d)});
  t.s_rows[0] = std::move(full);
  t.a_rows[0] = subtract_1d(t.s_rows[0], t.s_rows[1], n_cur, 1);
  return t;
}

void verify_totals(const TableSet& set, int block_length) {
  const SpectrumTable& t = set.ordinary_for(block_length);
  for (int i = 1; i <= block_length; ++i) {
    if (t.a(i).total() != pow2(block_length - i) || t.s(i).total() != pow2(block_length - i + 1)) {
      throw TripwireError("spectrum totals mismatch at N=" + std::to_string(block_length) +
                          " i=" + std::to_string(i));
    }
  }
}

}  // namespace

SpectrumTable marginalize(const SplitSpectrumTable& split) {
  SpectrumTable t;
  t.block_length = split.block_length;
  t.a_rows.resize(static_cast<size_t>(split.block_length));
  t.s_rows.resize(static_cast<size_t>(split.block_length));
  for (int i = 1; i <= split.block_length; ++i) {
    std::map<int, BigInt> acc_a;
    std::map<int, BigInt> acc_s;
    for (const auto& e : split.a(i).entries) acc_a[e.j + e.k] += e.count;
    for (const auto& e : split.s(i).entries) acc_s[e.j + e.k] += e.count;
    for (auto& [d, c] : acc_a) t.a_rows[static_cast<size_t>(i - 1)].entries.push_back({d, std::move(c)});
    for (auto& [d, c] : acc_s) t.s_rows[static_cast<size_t>(i - 1)].entries.push_back({d, std::move(c)});
  }
  return t;
}

TableSet build_tables(const BuildLimits& limits) {
  if (limits.n_max_split < 1 || limits.n_max_1d < limits.n_max_split) {
    throw ValidationError("build_tables: need 1 <= n_max_split <= n_max_1d");
  }
  BinomialTable binom;
  TableSet set;
  set.ordinary[2] = base_ordinary();
  set.split[2] = base_split();
  const int split_cap = 1 << limits.n_max_split;
  const int full_cap = 1 << limits.n_max_1d;
  for (int n_cur = 4; n_cur <= full_cap; n_cur *= 2) {
    const SpectrumTable& prev = set.ordinary_for(n_cur / 2);
    if (n_cur <= split_cap) {
      SplitSpectrumTable split = double_split(prev, binom);
      set.ordinary[n_cur] = marginalize(split);
      set.split[n_cur] = std::move(split);
    } else {
      set.ordinary[n_cur] = double_1d(prev, binom);
    }
    verify_totals(set, n_cur);
  }
  return set;
}

TableSet build_tables(int n_max) { return build_tables(BuildLimits{n_max, n_max}); }

}  // namespace polarfade
