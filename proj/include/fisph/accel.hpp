#pragma once
// Tail extrapolation for slowly convergent sums over c.
// Riesz means R_k(X) = sum_{c <= X} a_c (1 - c/X)^k are sampled at dyadic X
// and fitted by a constant plus 1/X, 1/X^2, log X / X, log X / X^2.

#include <array>
#include <cstdint>
#include <vector>

namespace fisph {

struct AccelResult {
  double value = 0.0;   // chosen estimate
  double error = 0.0;   // its error estimate
  double raw = 0.0;     // plain partial sum up to c_max
  double raw_error = 0.0;
  double fitted = 0.0;
  double fitted_error = 0.0;
  bool extrapolated = false;
};

class RieszAccumulator {
 public:
  static constexpr int kLevels = 6;
  static constexpr int kOrders = 3;  // kappa = 2, 3, 4

  explicit RieszAccumulator(std::int64_t c_max = 0);
  void reset(std::int64_t c_max);
  void add(std::int64_t c, double a);
  void merge(const RieszAccumulator& o);
  AccelResult finish() const;
  std::int64_t c_max() const { return c_max_; }

 private:
  std::int64_t c_max_ = 0;
  std::array<double, kLevels> X_{};
  std::array<std::array<double, kLevels>, kOrders> R_{};
  double raw_ = 0.0, raw_half_ = 0.0, raw_quarter_ = 0.0;
};

// convenience: terms[i] belongs to c = cs[i]
AccelResult accelerate(const std::vector<std::int64_t>& cs, const std::vector<double>& terms, std::int64_t c_max);

}  // namespace fisph
