#pragma once

#include <span>

namespace listhyp {

/// Pairwise (tree) summation. Error grows as O(log n) ulps instead of O(n).
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace listhyp

namespace listhyp {

/// Running Neumaier-compensated sum, for prefix sums where a tree is not available.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace listhyp
