#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace listhyp {

/// A pair of distributions (P under hypothesis 0, Q under hypothesis 1) on a common
/// finite set of atoms. Atoms where both masses vanish are dropped; atom_id() maps
/// the kept atoms back to their position in the input.
class MassPair {
 public:
  /// Throws NegativeMass, NotNormalized (|sum - 1| > 1e-9) or BadArgument (size mismatch).
  MassPair(std::span<const double> p, std::span<const double> q);

  std::size_t size() const noexcept { return p_.size(); }
  std::span<const double> p() const noexcept { return p_; }
  std::span<const double> q() const noexcept { return q_; }
  std::size_t atom_id(std::size_t i) const noexcept { return ids_[i]; }
  std::size_t input_size() const noexcept { return input_size_; }

  /// Likelihood ratio p/q of kept atom i: +inf when q = 0, 0 when p = 0.
  double ratio(std::size_t i) const noexcept;

 private:
  std::vector<double> p_;
  std::vector<double> q_;
  std::vector<std::size_t> ids_;
  std::size_t input_size_ = 0;
};

/// Solution of a Neyman-Pearson problem by a randomized likelihood-ratio threshold test:
/// atoms with ratio above `threshold` decide hypothesis 0, below decide 1, and the
/// boundary ratio class decides 0 with probability `gamma`.
struct NPResult {
  double value = 0.0;
  double threshold = std::numeric_limits<double>::infinity();
  double gamma = 1.0;
  /// The error the constraint was placed on (type-1 for alpha_beta, type-0 for beta_alpha).
  double achieved_constraint = 0.0;
};

/// alpha_beta(P, Q): minimum type-0 error P[decide 1] over randomized tests with
/// type-1 error Q[decide 0] <= beta. Throws BadBeta outside [0, 1].
NPResult alpha_beta(const MassPair& pq, double beta);

/// beta_alpha(P, Q): minimum type-1 error subject to type-0 error <= alpha.
/// Throws BadAlpha outside [0, 1].
NPResult beta_alpha(const MassPair& pq, double alpha);

/// Lagrangian form  sup_{lambda >= 0} P[r <= lambda] + lambda Q[r > lambda] - beta lambda,
/// evaluated over {0} and the distinct finite ratios, where the supremum is attained.
double alpha_beta_dual(const MassPair& pq, double beta);

/// Per-kept-atom probability of deciding hypothesis 0 under the threshold test in `result`.
std::vector<double> decide_zero_weights(const MassPair& pq, const NPResult& result);

/// (type-0 error, type-1 error) of a test given as per-kept-atom decide-0 weights.
std::pair<double, double> test_errors(const MassPair& pq, std::span<const double> decide_zero);

/// alpha_beta along a grid of beta values.
std::vector<std::pair<double, double>> pareto_curve(const MassPair& pq,
                                                    std::span<const double> grid);

}  // namespace listhyp
