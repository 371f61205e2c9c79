#pragma once

#include <cstdint>
#include <vector>

#include "listhyp/combinatorics.hpp"
#include "listhyp/dist_core.hpp"

namespace listhyp {

/// Relative tolerance under which two list masses at one outcome count as tied.
inline constexpr double kTieTol = 1e-12;

/// Minimum list error probability and the per-outcome maxima it is built from.
struct ErrorReport {
  std::uint32_t M = 0;
  std::uint32_t L = 0;
  double eps_min = 0.0;
  /// max over lists S of p_list(S, y), per outcome.
  std::vector<double> per_y_max;
  /// sum over y of per_y_max.
  double success_mass = 0.0;
  /// C(M-1, L-1)
  double lists_per_hypothesis = 1.0;
};

/// Minimum probability that the true hypothesis is missing from a size-L list:
///   eps = 1 - C(M-1, L-1) * sum_y max_S p_list(S, y).
/// The maximizing list at y holds the L largest entries of column y, so no subset
/// enumeration is needed. Throws BadListSize unless 1 <= L <= M.
ErrorReport min_error(const JointDistribution& P, std::uint32_t L);

/// Optimal randomized list test: at each outcome, pick uniformly among the maximizing lists.
struct ListTest {
  std::uint32_t M = 0;
  std::uint32_t L = 0;
  /// Maximizer set S(y), in lexicographic order. Never empty.
  std::vector<std::vector<HypothesisList>> maximizers;
};

/// S(y) holds every list whose mass is within kTieTol * max of the maximum. Outcomes with
/// an all-zero column get the lexicographically first list.
ListTest optimal_list_test(const JointDistribution& P, std::uint32_t L);

/// Monte Carlo estimate of the test's error: draws (x, y) from P, then a list from
/// S(y), and counts how often x is missing. Deterministic for a fixed seed.
double simulate(const JointDistribution& P, const ListTest& test, std::uint64_t n_samples,
                std::uint64_t seed);

}  // namespace listhyp
