// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace ntrmix {

// Raised when a computation produces a non-finite value or an iterative
// scheme fails to reach its tolerance.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112353;

// log(sum_i exp(x_i)) with max-shift; -inf for an empty range.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  double m = xs[0];
  for (double x : xs)
    if (x > m) m = x;
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

inline double log_normal_density(double y, double mean, double variance) {
  const double z = y - mean;
  return -0.5 * (kLogTwoPi + std::log(variance)) - z * z / (2.0 * variance);
}

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline bool relative_close(double a, double b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace ntrmix
