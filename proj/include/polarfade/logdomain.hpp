#pragma once

#include <cmath>
#include <limits>

namespace polarfade {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln(1 + e^x) without overflow.
inline double log1pexp(double x) {
  if (x > 35.0) return x;
  if (x < -35.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

// Streaming log-sum-exp accumulator. Deterministic for a fixed insertion
// order, which every caller in this library guarantees.
class LogSum {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (max_ == kNegInf) {
      max_ = log_term;
      sum_ = 1.0;
    } else if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }

  bool empty() const { return max_ == kNegInf; }
  double value() const { return empty() ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

// ln Q(x) for x >= 0, stable for large x.
inline double log_q(double x) {
  if (x < 30.0) return std::log(0.5 * std::erfc(x / std::sqrt(2.0)));
  double x2 = x * x;
  return -0.5 * x2 - std::log(x) - 0.5 * std::log(2.0 * M_PI) + std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

}  // namespace polarfade
