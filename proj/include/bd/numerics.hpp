#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace bd {

// Neumaier-compensated accumulator. Entropy-style sums cancel almost
// completely near the sharpness cases, so plain summation is not enough.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  KahanSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

// log(sum exp(a_i)) with max-subtraction; -inf entries are skipped.
inline double logsumexp(std::span<const double> a) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : a)
    if (x > m) m = x;
  if (!std::isfinite(m)) return m;
  KahanSum acc;
  for (double x : a) acc.add(std::exp(x - m));
  return m + std::log(acc.value());
}

inline double log_poisson_pmf(double lambda, int x) {
  return -lambda + x * std::log(lambda) - std::lgamma(double(x) + 1.0);
}

}  // namespace bd
