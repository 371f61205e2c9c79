#include "listhyp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "listhyp/error.hpp"
#include "listhyp/list_test.hpp"
#include "listhyp/summation.hpp"

namespace listhyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack for the likelihood-ratio threshold comparisons in the zero-outcome construction checks.
constexpr double kRatioTol = 1e-9;

double num_lists(const ListJointDistribution& PL) { return static_cast<double>(PL.num_lists()); }

void require_alphabet(const ListJointDistribution& PL, const OutputDistribution& q_y) {
  if (q_y.size() != PL.card_y()) {
    throw Error(ErrorCode::BadArgument, "q_y has " + std::to_string(q_y.size()) +
                                            " entries, expected " + std::to_string(PL.card_y()));
  }
}

}  // namespace

std::vector<double> list_column_max(const ListJointDistribution& PL) {
  std::vector<double> best(PL.card_y(), 0.0);
  for (std::size_t r = 0; r < PL.num_lists(); ++r) {
    for (std::size_t y = 0; y < PL.card_y(); ++y) best[y] = std::max(best[y], PL.at(r, y));
  }
  return best;
}

MassPair list_mass_pair(const ListJointDistribution& PL, const OutputDistribution& q_y) {
  require_alphabet(PL, q_y);
  const double prior = 1.0 / num_lists(PL);
  std::vector<double> q(PL.flat().size());
  for (std::size_t r = 0; r < PL.num_lists(); ++r) {
    for (std::size_t y = 0; y < PL.card_y(); ++y) q[r * PL.card_y() + y] = prior * q_y[y];
  }
  return MassPair(PL.flat(), q);
}

QStar qstar(const ListJointDistribution& PL) {
  auto best = list_column_max(PL);
  const double mu = pairwise_sum(best);
  if (!(mu > 0.0)) throw Error(ErrorCode::DegenerateInstance, "per-outcome maxima sum to zero");
  for (auto& v : best) v /= mu;
  return QStar{OutputDistribution(std::move(best)), mu};
}

double eps_min_from_list(const ListJointDistribution& PL) {
  const double mu = pairwise_sum(list_column_max(PL));
  return std::clamp(1.0 - PL.lists_per_hypothesis() * mu, 0.0, 1.0);
}

double lambda_star(const ListJointDistribution& PL) {
  const double mu = qstar(PL).mu;
  const double direct = num_lists(PL) * mu;
  const double eps = 1.0 - PL.lists_per_hypothesis() * mu;
  const double via_error = static_cast<double>(PL.M()) / PL.L() * (1.0 - eps);
  if (std::abs(direct - via_error) > 1e-12 * std::max(1.0, direct)) {
    throw Error(ErrorCode::DegenerateInstance, "lambda* routes disagree: " + std::to_string(direct) +
                                                   " vs " + std::to_string(via_error));
  }
  return direct;
}

MetaConverseResult meta_converse_bound(const ListJointDistribution& PL, const OutputDistribution& q_y) {
  const auto pq = list_mass_pair(PL, q_y);
  MetaConverseResult res;
  res.q_y = q_y;
  res.np = alpha_beta(pq, 1.0 / num_lists(PL));
  res.alpha_value = res.np.value;
  res.lower_bound_eps = 1.0 - PL.lists_per_hypothesis() * (1.0 - res.alpha_value);
  res.identity_gap = eps_min_from_list(PL) - res.lower_bound_eps;
  return res;
}

MetaConverseResult meta_converse_bound(const JointDistribution& P, std::uint32_t L,
                                       const OutputDistribution& q_y) {
  return meta_converse_bound(build_list_joint(P, L), q_y);
}

double corollary_beta(const ListJointDistribution& PL, const OutputDistribution& q_y) {
  const double eps = eps_min_from_list(PL);
  const double alpha = std::clamp(1.0 - (1.0 - eps) / PL.lists_per_hypothesis(), 0.0, 1.0);
  return beta_alpha(list_mass_pair(PL, q_y), alpha).value;
}

double corollary_beta(const JointDistribution& P, std::uint32_t L, const OutputDistribution& q_y) {
  return corollary_beta(build_list_joint(P, L), q_y);
}

double info_spectrum_bound(const ListJointDistribution& PL, const OutputDistribution& q_y,
                           double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::BadLambda, "lambda must be non-negative");
  const auto pq = list_mass_pair(PL, q_y);
  std::vector<double> below;
  for (std::size_t i = 0; i < pq.size(); ++i) {
    if (pq.p()[i] > 0.0 && pq.ratio(i) <= lambda) below.push_back(pq.p()[i]);
  }
  const double spectrum = pairwise_sum(below) - lambda / num_lists(PL);
  return 1.0 - PL.lists_per_hypothesis() * (1.0 - spectrum);
}

double info_spectrum_bound(const JointDistribution& P, std::uint32_t L,
                           const OutputDistribution& q_y, double lambda) {
  return info_spectrum_bound(build_list_joint(P, L), q_y, lambda);
}

InfoSpectrumResult info_spectrum_sup(const ListJointDistribution& PL, const OutputDistribution& q_y) {
  const auto pq = list_mass_pair(PL, q_y);
  const double prior = 1.0 / num_lists(PL);

  std::vector<std::pair<double, double>> atoms;  // (ratio, p) on the P-support
  for (std::size_t i = 0; i < pq.size(); ++i) {
    if (pq.p()[i] > 0.0) atoms.emplace_back(pq.ratio(i), pq.p()[i]);
  }
  std::sort(atoms.begin(), atoms.end());

  // The objective is non-increasing between realized ratios, so candidates are the
  // realized finite ratios plus lambda = 0 (where it is 0 on the P-support).
  std::vector<std::pair<double, double>> candidates{{0.0, 0.0}};
  CompensatedSum below;
  for (std::size_t k = 0; k < atoms.size();) {
    const double r = atoms[k].first;
    if (r == kInf) break;
    while (k < atoms.size() && atoms[k].first == r) below.add(atoms[k++].second);
    candidates.emplace_back(r, below.value() - r * prior);
  }
  double best = candidates.front().second;
  for (const auto& c : candidates) best = std::max(best, c.second);
  double lambda_opt = 0.0;
  for (const auto& c : candidates) {
    if (c.second >= best - 1e-12) lambda_opt = std::max(lambda_opt, c.first);
  }

  InfoSpectrumResult res;
  res.q_y = q_y;
  res.lambda_opt = lambda_opt;
  res.sup_value = best;
  res.lower_bound_eps = 1.0 - PL.lists_per_hypothesis() * (1.0 - best);
  return res;
}

InfoSpectrumResult info_spectrum_sup(const JointDistribution& P, std::uint32_t L,
                                     const OutputDistribution& q_y) {
  return info_spectrum_sup(build_list_joint(P, L), q_y);
}

bool Lemma2Record::verified() const noexcept {
  return std::abs(eps1_hat - beta) <= 1e-12 && eps0_after > eps0_before &&
         threshold_cases_ok[0] && threshold_cases_ok[1] && threshold_cases_ok[2] &&
         alpha_qhat > alpha_q && std::abs(eps0_after - alpha_qhat) <= 1e-10 &&
         std::abs(eps0_before - alpha_q) <= 1e-10;
}

std::optional<std::size_t> find_improvable_outcome(const ListJointDistribution& PL,
                                               const OutputDistribution& q_y) {
  require_alphabet(PL, q_y);
  for (std::size_t y = 0; y < PL.card_y(); ++y) {
    if (q_y[y] != 0.0) continue;
    std::size_t positive = 0;
    for (std::size_t r = 0; r < PL.num_lists() && positive < 2; ++r) {
      if (PL.at(r, y) > 0.0) ++positive;
    }
    if (positive >= 2) return y;
  }
  return std::nullopt;
}

Lemma2Record lemma2_improve(const ListJointDistribution& PL, const OutputDistribution& q_y,
                            std::size_t y_bar) {
  require_alphabet(PL, q_y);
  const std::size_t Y = PL.card_y();
  const std::size_t R = PL.num_lists();
  if (y_bar >= Y) throw Error(ErrorCode::BadArgument, "y_bar out of range");
  if (q_y[y_bar] != 0.0) {
    throw Error(ErrorCode::PreconditionFailed, "q_y(y_bar) must be zero");
  }
  std::size_t positive = 0;
  for (std::size_t r = 0; r < R; ++r) positive += PL.at(r, y_bar) > 0.0 ? 1 : 0;
  if (positive < 2) {
    throw Error(ErrorCode::PreconditionFailed,
                "fewer than two lists carry mass at y_bar (observation identifies its cause)");
  }

  const double C = num_lists(PL);
  Lemma2Record rec;
  rec.y_bar = y_bar;
  rec.beta = 1.0 / C;

  // Optimal test T for q_y at type-1 error exactly 1 / C(M, L), on the full (list, y) grid.
  const auto pq = list_mass_pair(PL, q_y);
  const auto np = alpha_beta(pq, rec.beta);
  std::vector<double> t0(R * Y, 0.0);  // probability of deciding hypothesis 0
  {
    const auto w = decide_zero_weights(pq, np);
    for (std::size_t i = 0; i < pq.size(); ++i) t0[pq.atom_id(i)] = w[i];
  }
  rec.lambda_threshold = np.threshold;
  if (np.achieved_constraint < rec.beta - 1e-15) {
    // alpha is already zero; spend the leftover budget on p = 0 atoms so the type-1
    // error is met with equality. The threshold drops to zero.
    std::vector<double> zero_q;
    for (std::size_t i = 0; i < pq.size(); ++i) {
      if (pq.p()[i] == 0.0) zero_q.push_back(pq.q()[i]);
    }
    const double mass = pairwise_sum(zero_q);
    const double fill = std::min(1.0, (rec.beta - np.achieved_constraint) / mass);
    for (std::size_t i = 0; i < pq.size(); ++i) {
      if (pq.p()[i] == 0.0) t0[pq.atom_id(i)] = fill;
    }
    rec.lambda_threshold = 0.0;
  }
  if (!std::isfinite(rec.lambda_threshold)) {
    throw Error(ErrorCode::DegenerateInstance, "optimal test has an infinite threshold");
  }

  // x_bar: lexicographically first maximizing list at y_bar.
  double best = 0.0;
  for (std::size_t r = 0; r < R; ++r) best = std::max(best, PL.at(r, y_bar));
  std::size_t x_bar = 0;
  while (PL.at(x_bar, y_bar) < best * (1.0 - kTieTol)) ++x_bar;
  rec.x_bar = PL.lists()[x_bar];

  rec.mu = C * best + rec.lambda_threshold;
  std::vector<double> q_hat(Y);
  for (std::size_t y = 0; y < Y; ++y) {
    q_hat[y] = y == y_bar ? C * best / rec.mu : rec.lambda_threshold * q_y[y] / rec.mu;
  }
  rec.q_hat = OutputDistribution(q_hat);

  std::vector<double> t0_hat = t0;
  for (std::size_t r = 0; r < R; ++r) t0_hat[r * Y + y_bar] = r == x_bar ? 1.0 : 0.0;

  std::vector<double> e1_before(R * Y), e1_hat(R * Y), e0_before(R * Y), e0_after(R * Y);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t y = 0; y < Y; ++y) {
      const std::size_t i = r * Y + y;
      e1_before[i] = q_y[y] / C * t0[i];
      e1_hat[i] = q_hat[y] / C * t0_hat[i];
      e0_before[i] = PL.at(r, y) * (1.0 - t0[i]);
      e0_after[i] = PL.at(r, y) * (1.0 - t0_hat[i]);
    }
  }
  rec.eps1_before = pairwise_sum(e1_before);
  rec.eps1_hat = pairwise_sum(e1_hat);
  rec.eps0_before = pairwise_sum(e0_before);
  rec.eps0_after = pairwise_sum(e0_after);

  // mu must act as a likelihood-ratio threshold for the improved test everywhere.
  auto ratio_hat = [&](std::size_t r, std::size_t y) {
    const double q = q_hat[y] / C;
    return q == 0.0 ? kInf : PL.at(r, y) / q;
  };
  const double hi = rec.mu * (1.0 + kRatioTol);
  const double lo = rec.mu * (1.0 - kRatioTol);
  bool case_other = true, case_not_xbar = true, case_xbar = true;
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t y = 0; y < Y; ++y) {
      if (PL.at(r, y) == 0.0 && q_hat[y] == 0.0) continue;
      const double ratio = ratio_hat(r, y);
      const double w = t0_hat[r * Y + y];
      if (y != y_bar) {
        const bool ok = w == 1.0 ? ratio >= lo : w == 0.0 ? ratio <= hi : (ratio >= lo && ratio <= hi);
        case_other = case_other && ok;
      } else if (r != x_bar) {
        case_not_xbar = case_not_xbar && w == 0.0 && ratio <= hi;
      } else {
        case_xbar = case_xbar && w == 1.0 && ratio >= lo && ratio <= hi;
      }
    }
  }
  rec.threshold_cases_ok = {case_other, case_not_xbar, case_xbar};

  rec.alpha_q = np.value;
  rec.alpha_qhat = alpha_beta(list_mass_pair(PL, rec.q_hat), rec.beta).value;
  return rec;
}

Lemma2Record lemma2_improve(const JointDistribution& P, std::uint32_t L,
                            const OutputDistribution& q_y, std::optional<std::size_t> y_bar) {
  const auto PL = build_list_joint(P, L);
  if (!y_bar) {
    y_bar = find_improvable_outcome(PL, q_y);
    if (!y_bar) throw Error(ErrorCode::PreconditionFailed, "no outcome satisfies both conditions");
  }
  return lemma2_improve(PL, q_y, *y_bar);
}

}  // namespace listhyp
