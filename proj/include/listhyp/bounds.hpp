#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "listhyp/dist_core.hpp"
#include "listhyp/np.hpp"

namespace listhyp {

/// max over lists S of p_list(S, y), for every outcome y.
std::vector<double> list_column_max(const ListJointDistribution& PL);

/// The binary problem  p_list  versus  (uniform list prior) x q_y  on the (list, y) grid.
/// Atom (rank, y) has input index rank * |Y| + y.
MassPair list_mass_pair(const ListJointDistribution& PL, const OutputDistribution& q_y);

/// Q*(y) = max_S p_list(S, y) / mu with mu = sum_y max_S p_list(S, y).
struct QStar {
  OutputDistribution q;
  double mu = 0.0;
};

/// Throws DegenerateInstance if mu = 0.
QStar qstar(const ListJointDistribution& PL);

/// lambda* = C(M, L) * mu. Cross-checked against (M / L) * (1 - eps_min); throws
/// DegenerateInstance if the two routes disagree by more than 1e-12.
double lambda_star(const ListJointDistribution& PL);

/// Minimum list error probability computed from the list-level distribution.
double eps_min_from_list(const ListJointDistribution& PL);

struct MetaConverseResult {
  OutputDistribution q_y;
  /// alpha at type-1 constraint 1 / C(M, L).
  double alpha_value = 0.0;
  /// 1 - C(M-1, L-1) * (1 - alpha_value)
  double lower_bound_eps = 0.0;
  /// eps_min - lower_bound_eps; zero (up to rounding) exactly when q_y is optimal.
  double identity_gap = 0.0;
  NPResult np;
};

MetaConverseResult meta_converse_bound(const ListJointDistribution& PL, const OutputDistribution& q_y);
MetaConverseResult meta_converse_bound(const JointDistribution& P, std::uint32_t L,
                                       const OutputDistribution& q_y);

/// beta at type-0 constraint 1 - (1 - eps_min) / C(M-1, L-1). Never exceeds 1 / C(M, L)
/// (up to rounding) and equals it at Q*.
double corollary_beta(const ListJointDistribution& PL, const OutputDistribution& q_y);
double corollary_beta(const JointDistribution& P, std::uint32_t L, const OutputDistribution& q_y);

/// Lower bound on eps_min from a single threshold:
///   1 - C(M-1, L-1) * (1 - (P[ratio <= lambda] - lambda / C(M, L))).
/// Throws BadLambda for lambda < 0.
double info_spectrum_bound(const ListJointDistribution& PL, const OutputDistribution& q_y,
                           double lambda);
double info_spectrum_bound(const JointDistribution& P, std::uint32_t L,
                           const OutputDistribution& q_y, double lambda);

struct InfoSpectrumResult {
  OutputDistribution q_y;
  double lambda_opt = 0.0;
  /// sup over lambda >= 0 of P[ratio <= lambda] - lambda / C(M, L)
  double sup_value = 0.0;
  double lower_bound_eps = 0.0;
};

/// Maximizes over {0} and the finite ratios realized on the P-support. Among maximizers
/// within 1e-12 of the best value the largest lambda is reported.
InfoSpectrumResult info_spectrum_sup(const ListJointDistribution& PL, const OutputDistribution& q_y);
InfoSpectrumResult info_spectrum_sup(const JointDistribution& P, std::uint32_t L,
                                     const OutputDistribution& q_y);

/// Construction that strictly improves an output distribution with a zero at an
/// ambiguous outcome, together with every quantity needed to check it.
struct Lemma2Record {
  std::size_t y_bar = 0;
  HypothesisList x_bar;
  OutputDistribution q_hat;
  /// Normalizer of q_hat and likelihood-ratio threshold of the improved test.
  double mu = 0.0;
  /// Threshold of the optimal test for the original q_y.
  double lambda_threshold = 0.0;
  double eps1_before = 0.0;
  double eps1_hat = 0.0;
  double eps0_before = 0.0;
  double eps0_after = 0.0;
  /// alpha at 1 / C(M, L), recomputed independently for q_y and q_hat.
  double alpha_q = 0.0;
  double alpha_qhat = 0.0;
  /// {y != y_bar consistent, y = y_bar non-x_bar lists at or below mu, x_bar exactly at mu}
  std::array<bool, 3> threshold_cases_ok{};
  double beta = 0.0;

  /// Every property the construction promises, at the library's tolerances.
  bool verified() const noexcept;
};

/// First outcome with q_y(y) = 0 and at least two lists of positive mass.
std::optional<std::size_t> find_improvable_outcome(const ListJointDistribution& PL,
                                               const OutputDistribution& q_y);

/// Throws PreconditionFailed if q_y(y_bar) != 0 or fewer than two lists carry mass at y_bar.
Lemma2Record lemma2_improve(const ListJointDistribution& PL, const OutputDistribution& q_y,
                            std::size_t y_bar);
Lemma2Record lemma2_improve(const JointDistribution& P, std::uint32_t L,
                            const OutputDistribution& q_y, std::optional<std::size_t> y_bar = {});

}  // namespace listhyp
