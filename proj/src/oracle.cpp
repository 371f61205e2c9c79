#include "listhyp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "listhyp/error.hpp"
#include "listhyp/summation.hpp"

namespace listhyp::oracle {

namespace {

/// Calls fn(mask) for every M-bit mask with exactly L bits set (Gosper's hack).
template <typename Fn>
void for_each_subset_mask(std::uint32_t M, std::uint32_t L, Fn&& fn) {
  if (L == 0) {
    fn(std::uint64_t{0});
    return;
  }
  std::uint64_t mask = (std::uint64_t{1} << L) - 1;
  const std::uint64_t limit = std::uint64_t{1} << M;
  while (mask < limit) {
    fn(mask);
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

std::uint64_t count_subsets(std::uint32_t M, std::uint32_t L) {
  std::uint64_t n = 0;
  for_each_subset_mask(M, L, [&](std::uint64_t) { ++n; });
  return n;
}

double cross(const EnvelopePoint& o, const EnvelopePoint& a, const EnvelopePoint& b) {
  return (a.eps1 - o.eps1) * (b.eps0 - o.eps0) - (a.eps0 - o.eps0) * (b.eps1 - o.eps1);
}

}  // namespace

double brute_min_error(const JointDistribution& P, std::uint32_t L) {
  const std::uint32_t M = P.M();
  if (L < 1 || L > M) throw Error(ErrorCode::BadListSize, "list size out of range");
  if (M > 62) throw Error(ErrorCode::TooLarge, "subset masks need M <= 62");
  const std::uint64_t lists = count_subsets(M, L);
  if (lists * P.card_y() > kMaxEnumeratedCells) {
    throw Error(ErrorCode::TooLarge, "C(M,L)*|Y| exceeds the enumeration cap");
  }
  std::vector<double> best(P.card_y(), 0.0);
  for (std::size_t y = 0; y < P.card_y(); ++y) {
    for_each_subset_mask(M, L, [&](std::uint64_t mask) {
      double s = 0.0;
      for (std::uint32_t x = 0; x < M; ++x) {
        if (mask >> x & 1) s += P(x, y);
      }
      best[y] = std::max(best[y], s);
    });
  }
  return 1.0 - pairwise_sum(best);
}

std::vector<EnvelopePoint> deterministic_tests(const MassPair& pq) {
  const std::size_t K = pq.size();
  if (K > kMaxTestAtoms) {
    throw Error(ErrorCode::TooLarge, std::to_string(K) + " atoms exceed the 2^20 test cap");
  }
  // Bit k set: decide hypothesis 0 on atom k.
  const std::size_t n = std::size_t{1} << K;
  std::vector<double> q_in(n, 0.0), p_in(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    const auto k = static_cast<std::size_t>(std::countr_zero(m));
    q_in[m] = q_in[m & (m - 1)] + pq.q()[k];
    p_in[m] = p_in[m & (m - 1)] + pq.p()[k];
  }
  const double p_total = p_in[n - 1];
  std::vector<EnvelopePoint> pts(n);
  for (std::size_t m = 0; m < n; ++m) {
    pts[m] = {q_in[m], std::max(0.0, p_total - p_in[m])};
  }
  return pts;
}

std::vector<EnvelopePoint> lower_envelope(std::vector<EnvelopePoint> points) {
  std::sort(points.begin(), points.end(), [](const EnvelopePoint& a, const EnvelopePoint& b) {
    return a.eps1 < b.eps1 || (a.eps1 == b.eps1 && a.eps0 < b.eps0);
  });
  std::vector<EnvelopePoint> hull;
  for (const auto& pt : points) {
    if (!hull.empty() && hull.back().eps1 == pt.eps1) continue;  // keep the lowest per eps1
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0.0) hull.pop_back();
    hull.push_back(pt);
  }
  return hull;
}

double brute_alpha_beta(const MassPair& pq, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorCode::BadBeta, "beta not in [0, 1]");
  const auto hull = lower_envelope(deterministic_tests(pq));
  double best = 1.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (hull[i].eps1 > beta) {
      if (i > 0) {
        const auto& a = hull[i - 1];
        const auto& b = hull[i];
        const double t = (beta - a.eps1) / (b.eps1 - a.eps1);
        best = std::min(best, a.eps0 + t * (b.eps0 - a.eps0));
      }
      break;
    }
    best = std::min(best, hull[i].eps0);
  }
  return best;
}

ExactListSummary exact_list_summary(const RationalMatrix& P, std::uint32_t L) {
  if (P.empty() || P.front().empty()) throw Error(ErrorCode::EmptyAlphabet, "empty matrix");
  const auto M = static_cast<std::uint32_t>(P.size());
  const std::size_t Y = P.front().size();
  if (L < 1 || L > M) throw Error(ErrorCode::BadListSize, "list size out of range");
  if (M > 8 || L > 3 || Y > 10) {
    throw Error(ErrorCode::TooLarge, "exact oracle caps are M <= 8, L <= 3, |Y| <= 10");
  }
  std::vector<std::vector<Rational>> p(M, std::vector<Rational>(Y));
  Rational total = 0;
  for (std::uint32_t x = 0; x < M; ++x) {
    if (P[x].size() != Y) throw Error(ErrorCode::BadArgument, "ragged matrix");
    for (std::size_t y = 0; y < Y; ++y) {
      const auto [num, den] = P[x][y];
      if (den <= 0) throw Error(ErrorCode::BadArgument, "denominators must be positive");
      if (num < 0) throw Error(ErrorCode::NegativeMass, "negative entry");
      p[x][y] = Rational(num, den);
      total += p[x][y];
    }
  }
  if (total != 1) throw Error(ErrorCode::NotNormalized, "entries do not sum to exactly 1");

  ExactListSummary out;
  out.column_top.assign(Y, Rational(0));
  for (std::size_t y = 0; y < Y; ++y) {
    for_each_subset_mask(M, L, [&](std::uint64_t mask) {
      Rational s = 0;
      for (std::uint32_t x = 0; x < M; ++x) {
        if (mask >> x & 1) s += p[x][y];
      }
      if (s > out.column_top[y]) out.column_top[y] = s;
    });
  }
  Rational success = 0;
  for (const auto& t : out.column_top) success += t;
  out.eps_min = 1 - success;

  const Rational lists = Rational(count_subsets(M, L));
  const Rational per_hyp = Rational(count_subsets(M - 1, L - 1));
  out.mu = success / per_hyp;
  for (const auto& t : out.column_top) out.qstar.push_back(t / success);
  out.lambda_star = lists * out.mu;
  out.alpha_at_qstar = 1 - (1 - out.eps_min) / per_hyp;
  return out;
}

Rational exact_min_error_rational(const RationalMatrix& P, std::uint32_t L) {
  return exact_list_summary(P, L).eps_min;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace listhyp::oracle
