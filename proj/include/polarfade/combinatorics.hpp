#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace polarfade {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Pascal triangle with lazily materialized rows, exact arithmetic.
class BinomialTable {
 public:
  BinomialTable() = default;

  // C(n, k); zero outside 0 <= k <= n.
  const BigInt& operator()(int n, int k) const {
    if (n < 0 || k < 0 || k > n) return zero_;
    ensure_row(n);
    return rows_[static_cast<size_t>(n)][static_cast<size_t>(k)];
  }

 private:
  void ensure_row(int n) const {
    while (rows_.size() <= static_cast<size_t>(n)) {
      size_t m = rows_.size();
      std::vector<BigInt> row(m + 1);
      row[0] = 1;
      row[m] = 1;
      for (size_t k = 1; k < m; ++k) row[k] = rows_[m - 1][k - 1] + rows_[m - 1][k];
      rows_.push_back(std::move(row));
    }
  }

  mutable std::vector<std::vector<BigInt>> rows_;
  BigInt zero_{0};
};

// Natural log of a positive big integer; exact enough for score/bound work
// and safe for values far beyond double range.
inline double log_big(const BigInt& v) {
  signed long exp2 = 0;
  double m = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(m) + static_cast<double>(exp2) * std::log(2.0);
}

// ln C(n, k) via lgamma; log-domain twin of BinomialTable.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace polarfade
