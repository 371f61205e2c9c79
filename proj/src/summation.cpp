#include "listhyp/summation.hpp"

namespace listhyp {

namespace {

constexpr std::size_t kLeafSize = 8;

}  // namespace

double pairwise_sum(std::span<const double> values) noexcept {
  if (values.size() <= kLeafSize) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace listhyp

#include <cmath>

namespace listhyp {

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

}  // namespace listhyp
