#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "listhyp/bounds.hpp"
#include "listhyp/instance_io.hpp"
#include "listhyp/list_test.hpp"

namespace listhyp::cli {

/// Bad --family argument (exit code 2).
class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs fn(0..n-1) on up to `threads` workers; the first exception is rethrown after joining.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// One auxiliary output distribution drawn from a family.
struct QCandidate {
  std::string family;
  std::size_t index = 0;
  OutputDistribution q;
};

/// Families: uniform | marginal | qstar | dirichlet:SEED:COUNT, comma separated.
/// Dirichlet member i is a flat Dirichlet draw seeded with derive_seed(SEED, i).
std::vector<QCandidate> expand_families(const std::string& spec, const JointDistribution& P,
                                        const QStar& qs);

struct BoundRow {
  QCandidate candidate;
  MetaConverseResult mc;
  InfoSpectrumResult is;
  double gap_is = 0.0;
  /// Total variation distance to Q*.
  double tv_to_qstar = 0.0;
};

struct OracleFlags {
  /// Brute-force eps_min only runs under its enumeration cap.
  bool min_error_checked = false;
  bool min_error_agrees = true;
  /// Greedy against dual for the alpha at Q*; envelope oracle when the support allows.
  bool np_dual_agrees = true;
  bool np_envelope_checked = false;
  bool np_envelope_agrees = true;
  bool all() const noexcept { return min_error_agrees && np_dual_agrees && np_envelope_agrees; }
};

struct AnalysisReport {
  std::string instance_hash;
  std::uint32_t M = 0;
  std::uint32_t L = 0;
  std::size_t card_y = 0;
  ErrorReport error;
  QStar q_star;
  double lambda_star = 0.0;
  std::vector<BoundRow> rows;
  /// Gaps of the meta-converse and information-spectrum bounds at Q*, and |lambda_opt - lambda*|.
  double qstar_gap_mc = 0.0;
  double qstar_gap_is = 0.0;
  double qstar_lambda_gap = 0.0;
  OracleFlags oracle;
  std::vector<std::pair<std::string, double>> timings_ms;
};

/// Bound rows are computed on `threads` workers and stored in candidate order.
AnalysisReport analyze(const Instance& inst, const std::string& families, unsigned threads);

BoundRow bound_row(const ListJointDistribution& PL, double eps_min, const QStar& qs,
                   QCandidate candidate);

/// Timings and the timestamp are left out when `timestamped` is false.
nlohmann::ordered_json report_json(const AnalysisReport& r, bool timestamped);

inline constexpr const char* kCsvHeader =
    "instance_hash,M,L,cardY,q_family,q_index,eps_min,mc_bound,is_bound,gap_mc,gap_is,lambda_opt";

std::string report_csv(const AnalysisReport& r);

}  // namespace listhyp::cli
