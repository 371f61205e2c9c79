#include "listhyp/np.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "listhyp/error.hpp"
#include "listhyp/summation.hpp"

namespace listhyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Budget left over after an exact class fit is rounding noise below this.
constexpr double kBudgetSnap = 1e-15;

void require_unit_sum(std::span<const double> v, const char* name) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::BadArgument, "non-finite mass");
    if (x < 0.0) throw Error(ErrorCode::NegativeMass, std::string(name) + " has negative mass");
  }
  const double total = pairwise_sum(v);
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, std::string(name) + " sums to " + std::to_string(total));
  }
}

/// Atoms sharing one exact floating-point likelihood ratio.
struct RatioClass {
  double ratio;
  double p;
  double q;
};

/// Groups atoms into ratio classes, ordered by ratio (descending or ascending) with
/// ties in atom order.
std::vector<RatioClass> ratio_classes(const MassPair& pq, bool descending) {
  std::vector<std::size_t> order(pq.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? pq.ratio(a) > pq.ratio(b) : pq.ratio(a) < pq.ratio(b);
  });
  std::vector<RatioClass> classes;
  std::vector<double> ps, qs;
  for (std::size_t k = 0; k < order.size();) {
    const double r = pq.ratio(order[k]);
    ps.clear();
    qs.clear();
    while (k < order.size() && pq.ratio(order[k]) == r) {
      ps.push_back(pq.p()[order[k]]);
      qs.push_back(pq.q()[order[k]]);
      ++k;
    }
    classes.push_back({r, pairwise_sum(ps), pairwise_sum(qs)});
  }
  return classes;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

MassPair::MassPair(std::span<const double> p, std::span<const double> q) : input_size_(p.size()) {
  if (p.size() != q.size()) throw Error(ErrorCode::BadArgument, "P and Q have different supports");
  require_unit_sum(p, "P");
  require_unit_sum(q, "Q");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0 && q[i] == 0.0) continue;
    p_.push_back(p[i]);
    q_.push_back(q[i]);
    ids_.push_back(i);
  }
}

double MassPair::ratio(std::size_t i) const noexcept {
  if (q_[i] == 0.0) return kInf;
  return p_[i] / q_[i];
}

NPResult alpha_beta(const MassPair& pq, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::BadBeta, "beta = " + std::to_string(beta) + " not in [0, 1]");
  }
  const auto classes = ratio_classes(pq, /*descending=*/true);

  // Greedy: decide 0 on the highest ratios until the type-1 budget is spent.
  NPResult res;
  double remaining = beta;
  std::size_t boundary = classes.size();  // first class not fully decided 0
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cls = classes[c];
    if (cls.ratio == kInf) {
      res.threshold = kInf;
      res.gamma = 1.0;
      continue;
    }
    if (cls.ratio == 0.0) {
      // p = 0 atoms only cost budget; the test never decides 0 on them.
      res.threshold = 0.0;
      res.gamma = 0.0;
      boundary = c;
      break;
    }
    if (cls.q <= remaining || std::abs(cls.q - remaining) <= kBudgetSnap) {
      remaining = std::max(0.0, remaining - cls.q);
      res.threshold = cls.ratio;
      res.gamma = 1.0;
      if (remaining <= kBudgetSnap) {
        boundary = c + 1;
        break;
      }
      continue;
    }
    res.threshold = cls.ratio;
    res.gamma = remaining / cls.q;
    boundary = c;
    break;
  }

  std::vector<double> decide_one_p;
  std::vector<double> decide_zero_q;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cls = classes[c];
    if (c < boundary) {
      decide_zero_q.push_back(cls.q);
    } else if (c == boundary && cls.ratio == res.threshold) {
      decide_one_p.push_back((1.0 - res.gamma) * cls.p);
      decide_zero_q.push_back(res.gamma * cls.q);
    } else {
      decide_one_p.push_back(cls.p);
    }
  }
  res.value = clamp01(pairwise_sum(decide_one_p));
  res.achieved_constraint = pairwise_sum(decide_zero_q);
  return res;
}

NPResult beta_alpha(const MassPair& pq, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::BadAlpha, "alpha = " + std::to_string(alpha) + " not in [0, 1]");
  }
  const auto classes = ratio_classes(pq, /*descending=*/false);

  // Greedy: decide 1 on the lowest ratios until the type-0 budget is spent.
  NPResult res;
  res.threshold = 0.0;
  res.gamma = 0.0;
  double remaining = alpha;
  std::size_t boundary = classes.size();  // first class not fully decided 1
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cls = classes[c];
    if (cls.ratio == 0.0) continue;  // free to decide 1
    if (cls.ratio == kInf) {
      // q = 0: deciding 1 costs type-0 error and saves nothing.
      boundary = c;
      break;
    }
    if (cls.p <= remaining || std::abs(cls.p - remaining) <= kBudgetSnap) {
      remaining = std::max(0.0, remaining - cls.p);
      res.threshold = cls.ratio;
      res.gamma = 0.0;
      if (remaining <= kBudgetSnap) {
        boundary = c + 1;
        break;
      }
      continue;
    }
    res.threshold = cls.ratio;
    res.gamma = 1.0 - remaining / cls.p;
    boundary = c;
    break;
  }

  std::vector<double> decide_zero_q;
  std::vector<double> decide_one_p;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cls = classes[c];
    if (c < boundary) {
      decide_one_p.push_back(cls.p);
    } else if (c == boundary && cls.ratio == res.threshold) {
      decide_zero_q.push_back(res.gamma * cls.q);
      decide_one_p.push_back((1.0 - res.gamma) * cls.p);
    } else {
      decide_zero_q.push_back(cls.q);
    }
  }
  res.value = clamp01(pairwise_sum(decide_zero_q));
  res.achieved_constraint = pairwise_sum(decide_one_p);
  return res;
}

double alpha_beta_dual(const MassPair& pq, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::BadBeta, "beta = " + std::to_string(beta) + " not in [0, 1]");
  }
  const std::size_t n = pq.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pq.ratio(a) < pq.ratio(b); });

  // Q[r > lambda] as a suffix sum over the ascending order.
  std::vector<double> q_above(n + 1, 0.0);
  {
    CompensatedSum acc;
    for (std::size_t k = n; k-- > 0;) {
      acc.add(pq.q()[order[k]]);
      q_above[k] = acc.value();
    }
  }

  // lambda = 0: P[r <= 0] collects only p = 0 atoms, so the objective is 0.
  double best = 0.0;
  CompensatedSum p_below;
  for (std::size_t k = 0; k < n;) {
    const double r = pq.ratio(order[k]);
    if (r == kInf) break;
    while (k < n && pq.ratio(order[k]) == r) p_below.add(pq.p()[order[k++]]);
    const double f = p_below.value() + r * q_above[k] - beta * r;
    best = std::max(best, f);
  }
  return clamp01(best);
}

std::vector<double> decide_zero_weights(const MassPair& pq, const NPResult& result) {
  std::vector<double> w(pq.size());
  for (std::size_t i = 0; i < pq.size(); ++i) {
    const double r = pq.ratio(i);
    if (r > result.threshold) {
      w[i] = 1.0;
    } else if (r == result.threshold) {
      w[i] = result.gamma;
    } else {
      w[i] = 0.0;
    }
  }
  return w;
}

std::pair<double, double> test_errors(const MassPair& pq, std::span<const double> decide_zero) {
  if (decide_zero.size() != pq.size()) throw Error(ErrorCode::BadArgument, "test size mismatch");
  std::vector<double> e0(pq.size()), e1(pq.size());
  for (std::size_t i = 0; i < pq.size(); ++i) {
    e0[i] = pq.p()[i] * (1.0 - decide_zero[i]);
    e1[i] = pq.q()[i] * decide_zero[i];
  }
  return {pairwise_sum(e0), pairwise_sum(e1)};
}

std::vector<std::pair<double, double>> pareto_curve(const MassPair& pq,
                                                    std::span<const double> grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double beta : grid) out.emplace_back(beta, alpha_beta(pq, beta).value);
  return out;
}

}  // namespace listhyp
