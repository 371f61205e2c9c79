#pragma once

// Brute-force ground truth. Nothing here calls the closed-form routines it is used to check.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <utility>
#include <vector>

#include "listhyp/dist_core.hpp"
#include "listhyp/np.hpp"

namespace listhyp::oracle {

using Rational = boost::multiprecision::cpp_rational;

/// Cap on C(M, L) * |Y| for brute_min_error.
inline constexpr std::uint64_t kMaxEnumeratedCells = 100'000;
/// Cap on the support size for brute_alpha_beta (2^20 deterministic tests).
inline constexpr std::size_t kMaxTestAtoms = 20;

/// eps_min by enumerating every L-subset per outcome. Throws TooLarge past the cap.
double brute_min_error(const JointDistribution& P, std::uint32_t L);

/// (type-1 error, type-0 error) of one deterministic test.
struct EnvelopePoint {
  double eps1;
  double eps0;
};

/// Error pairs of all 2^K deterministic tests. Throws TooLarge for K > kMaxTestAtoms.
std::vector<EnvelopePoint> deterministic_tests(const MassPair& pq);

/// Lower convex hull of the points, ordered by increasing eps1.
std::vector<EnvelopePoint> lower_envelope(std::vector<EnvelopePoint> points);

/// alpha_beta as the minimum of the lower convex envelope over eps1 <= beta. Randomized
/// tests are exactly the mixtures of deterministic ones, so this is exact.
double brute_alpha_beta(const MassPair& pq, double beta);

/// Exact probability matrix entry numerator / denominator.
using RationalEntry = std::pair<std::int64_t, std::int64_t>;
using RationalMatrix = std::vector<std::vector<RationalEntry>>;

/// Exact quantities of the list problem, by subset enumeration in rational arithmetic.
struct ExactListSummary {
  Rational eps_min;
  /// max over L-subsets of the column sum, per outcome (no 1 / C(M-1, L-1) factor).
  std::vector<Rational> column_top;
  /// sum_y max_S p_list(S, y)
  Rational mu;
  std::vector<Rational> qstar;
  Rational lambda_star;
  /// alpha at 1 / C(M, L) against Q*, from the tightness identity.
  Rational alpha_at_qstar;
};

/// Caps: M <= 8, L <= 3, |Y| <= 10. Throws NotNormalized unless the entries sum to exactly 1,
/// NegativeMass, BadArgument on zero denominators, TooLarge past the caps.
ExactListSummary exact_list_summary(const RationalMatrix& P, std::uint32_t L);

Rational exact_min_error_rational(const RationalMatrix& P, std::uint32_t L);

double to_double(const Rational& r);

}  // namespace listhyp::oracle
