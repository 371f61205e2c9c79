#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "listhyp/combinatorics.hpp"

namespace listhyp {

/// Tolerance used for normalization checks on validated distributions.
inline constexpr double kNormTol = 1e-9;
/// Slack within which raw input is renormalized instead of rejected.
inline constexpr double kRenormSlack = 1e-6;
/// Negative entries above this are treated as rounding noise and clamped to zero.
inline constexpr double kNegativeClamp = -1e-12;

using Matrix = std::vector<std::vector<double>>;

/// Joint distribution P_XY over M hypotheses and |Y| outcomes, stored dense row-major.
/// Immutable once built; construct through validate_joint().
class JointDistribution {
 public:
  std::uint32_t M() const noexcept { return M_; }
  std::size_t card_y() const noexcept { return labels_.size(); }
  const std::vector<std::string>& outcome_labels() const noexcept { return labels_; }

  double operator()(std::uint32_t x, std::size_t y) const noexcept { return p_[x * card_y() + y]; }
  std::span<const double> row(std::uint32_t x) const noexcept {
    return std::span<const double>(p_).subspan(x * card_y(), card_y());
  }
  std::span<const double> flat() const noexcept { return p_; }

  /// Column of hypothesis masses for outcome y.
  std::vector<double> column(std::size_t y) const;
  /// Output marginal P_Y.
  std::vector<double> output_marginal() const;
  /// Prior P_X.
  std::vector<double> prior() const;

 private:
  friend JointDistribution validate_joint(const Matrix&, std::vector<std::string>);
  std::uint32_t M_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> p_;
};

/// Validates a raw [x][y] matrix. Entries in (-1e-12, 0) are clamped to 0 and a total
/// within 1e-6 of one is renormalized. Labels default to "0", "1", ... when empty.
/// Errors: EmptyAlphabet, NegativeMass, NotNormalized, BadArgument (ragged rows, label count).
JointDistribution validate_joint(const Matrix& raw, std::vector<std::string> outcome_labels = {});

/// Induced distribution over (list, outcome) pairs:
///   p_list(S, y) = sum_{x in S} P_XY(x, y) / C(M-1, L-1)
/// Lists are unordered and indexed by their lexicographic rank.
class ListJointDistribution {
 public:
  std::uint32_t M() const noexcept { return M_; }
  std::uint32_t L() const noexcept { return L_; }
  std::size_t card_y() const noexcept { return card_y_; }
  std::size_t num_lists() const noexcept { return lists_.size(); }
  const std::vector<HypothesisList>& lists() const noexcept { return lists_; }

  double at(std::size_t rank, std::size_t y) const noexcept { return p_[rank * card_y_ + y]; }
  double operator()(const HypothesisList& list, std::size_t y) const;
  /// Row-major over (rank, y).
  std::span<const double> flat() const noexcept { return p_; }

  /// C(M-1, L-1): number of lists containing any given hypothesis.
  double lists_per_hypothesis() const noexcept { return lists_per_hypothesis_; }

 private:
  friend ListJointDistribution build_list_joint(const JointDistribution&, std::uint32_t);
  std::uint32_t M_ = 0;
  std::uint32_t L_ = 0;
  std::size_t card_y_ = 0;
  double lists_per_hypothesis_ = 1.0;
  std::vector<HypothesisList> lists_;
  std::vector<double> p_;
};

/// Upper bound on C(M, L) * |Y| accepted by build_list_joint.
inline constexpr std::uint64_t kMaxListCells = 20'000'000;

/// Errors: BadListSize unless 1 <= L <= M; TooLarge beyond kMaxListCells.
ListJointDistribution build_list_joint(const JointDistribution& P, std::uint32_t L);

/// Uniform prior over the C(M, L) lists.
struct ListPrior {
  std::uint32_t M;
  std::uint32_t L;
  double mass;  // 1 / C(M, L)
};

ListPrior make_list_prior(std::uint32_t M, std::uint32_t L);

/// Auxiliary output distribution Q_Y. Zero entries are allowed.
class OutputDistribution {
 public:
  OutputDistribution() = default;
  /// Throws NegativeMass / NotNormalized when q is not a distribution within 1e-9.
  explicit OutputDistribution(std::vector<double> q);

  std::size_t size() const noexcept { return q_.size(); }
  double operator[](std::size_t y) const noexcept { return q_[y]; }
  std::span<const double> values() const noexcept { return q_; }

  static OutputDistribution uniform(std::size_t n);

 private:
  std::vector<double> q_;
};

/// Total variation distance, 0.5 * sum |a - b|.
double total_variation(const OutputDistribution& a, const OutputDistribution& b);

/// Upper bound on |Z|^n accepted by product_channel.
inline constexpr std::uint64_t kMaxProductOutcomes = 1'000'000;

/// P_XY(x, z_1..z_n) = prior[x] * prod_i W[x][z_i]. Outcome labels are the tuples
/// "z1,z2,...". Errors: TooLarge, NotNormalized, NegativeMass, BadArgument.
JointDistribution product_channel(std::span<const double> prior, const Matrix& channel,
                                  std::uint32_t n);

/// Random joint distribution: a symmetric Dirichlet(concentration) draw over the
/// M * card_y cells, built from independent Gamma variates. Deterministic per seed.
/// L is validated (1 <= L <= M) but does not influence the draw.
JointDistribution random_instance(std::uint32_t M, std::size_t card_y, std::uint32_t L,
                                  std::uint64_t seed, double concentration);

}  // namespace listhyp
