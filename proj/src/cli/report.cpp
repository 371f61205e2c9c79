#include "listhyp/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "listhyp/error.hpp"
#include "listhyp/oracle.hpp"
#include "listhyp/rng.hpp"

namespace listhyp::cli {

namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kOracleTol = 1e-12;
constexpr double kNpTol = 1e-10;
constexpr std::size_t kEnvelopeAtoms = 16;

std::uint64_t parse_u64(const std::string& s, const std::string& spec) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw FamilyError("bad family spec \"" + spec + "\"");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ojson real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

}  // namespace

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<QCandidate> expand_families(const std::string& spec, const JointDistribution& P,
                                        const QStar& qs) {
  std::vector<QCandidate> out;
  for (const auto& item : split(spec, ',')) {
    if (item == "uniform") {
      out.push_back({"uniform", 0, OutputDistribution::uniform(P.card_y())});
    } else if (item == "marginal") {
      out.push_back({"marginal", 0, OutputDistribution(P.output_marginal())});
    } else if (item == "qstar") {
      out.push_back({"qstar", 0, qs.q});
    } else if (item.rfind("dirichlet:", 0) == 0) {
      auto parts = split(item, ':');
      if (parts.size() != 3) throw FamilyError("bad family spec \"" + item + "\"");
      const std::uint64_t seed = parse_u64(parts[1], item);
      const std::uint64_t count = parse_u64(parts[2], item);
      if (count == 0 || count > 1'000'000) throw FamilyError("dirichlet count out of range");
      for (std::uint64_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, i));
        out.push_back({"dirichlet", i, OutputDistribution(sample_dirichlet(rng, P.card_y(), 1.0))});
      }
    } else {
      throw FamilyError("unknown family \"" + item + "\"");
    }
  }
  return out;
}

BoundRow bound_row(const ListJointDistribution& PL, double eps_min, const QStar& qs,
                   QCandidate candidate) {
  BoundRow row{std::move(candidate), {}, {}, 0.0, 0.0};
  row.mc = meta_converse_bound(PL, row.candidate.q);
  row.mc.identity_gap = eps_min - row.mc.lower_bound_eps;
  row.is = info_spectrum_sup(PL, row.candidate.q);
  row.gap_is = eps_min - row.is.lower_bound_eps;
  row.tv_to_qstar = total_variation(row.candidate.q, qs.q);
  return row;
}

AnalysisReport analyze(const Instance& inst, const std::string& families, unsigned threads) {
  const auto& P = inst.joint;
  AnalysisReport r;
  r.instance_hash = content_hash(P);
  r.M = P.M();
  r.L = inst.L;
  r.card_y = P.card_y();

  auto t0 = Clock::now();
  r.error = min_error(P, inst.L);
  r.timings_ms.emplace_back("min_error", ms_since(t0));

  t0 = Clock::now();
  const auto PL = build_list_joint(P, inst.L);
  r.q_star = qstar(PL);
  r.lambda_star = lambda_star(PL);
  r.timings_ms.emplace_back("qstar", ms_since(t0));

  auto candidates = expand_families(families, P, r.q_star);

  t0 = Clock::now();
  const auto at_qstar = bound_row(PL, r.error.eps_min, r.q_star, {"qstar", 0, r.q_star.q});
  r.qstar_gap_mc = std::abs(at_qstar.mc.identity_gap);
  r.qstar_gap_is = std::abs(at_qstar.gap_is);
  r.qstar_lambda_gap = std::abs(at_qstar.is.lambda_opt - r.lambda_star);
  r.timings_ms.emplace_back("identities", ms_since(t0));

  t0 = Clock::now();
  r.rows.resize(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    r.rows[i] = bound_row(PL, r.error.eps_min, r.q_star, candidates[i]);
  });
  r.timings_ms.emplace_back("bounds", ms_since(t0));

  t0 = Clock::now();
  const double cells = static_cast<double>(PL.num_lists()) * static_cast<double>(P.card_y());
  if (cells <= static_cast<double>(oracle::kMaxEnumeratedCells) && P.M() <= 62) {
    r.oracle.min_error_checked = true;
    r.oracle.min_error_agrees =
        std::abs(oracle::brute_min_error(P, inst.L) - r.error.eps_min) <= kOracleTol;
  }
  const auto pq = list_mass_pair(PL, r.q_star.q);
  const double beta = 1.0 / static_cast<double>(PL.num_lists());
  const double primal = alpha_beta(pq, beta).value;
  r.oracle.np_dual_agrees = std::abs(primal - alpha_beta_dual(pq, beta)) <= kNpTol;
  if (pq.size() <= kEnvelopeAtoms) {
    r.oracle.np_envelope_checked = true;
    r.oracle.np_envelope_agrees = std::abs(primal - oracle::brute_alpha_beta(pq, beta)) <= kNpTol;
  }
  r.timings_ms.emplace_back("oracle", ms_since(t0));
  return r;
}

ojson report_json(const AnalysisReport& r, bool timestamped) {
  ojson doc;
  doc["spec_version"] = "1";
  doc["instance"] = {{"M", r.M}, {"L", r.L}, {"cardY", r.card_y}, {"hash", r.instance_hash}};
  doc["eps_min"] = r.error.eps_min;
  doc["per_y_max"] = r.error.per_y_max;
  doc["q_star"] = std::vector<double>(r.q_star.q.values().begin(), r.q_star.q.values().end());
  doc["mu"] = r.q_star.mu;
  doc["lambda_star"] = r.lambda_star;
  doc["identity_gaps"] = {{"meta_converse", r.qstar_gap_mc},
                          {"info_spectrum", r.qstar_gap_is},
                          {"lambda_opt_vs_lambda_star", r.qstar_lambda_gap}};

  auto rows = ojson::array();
  for (const auto& row : r.rows) {
    ojson item;
    item["q_family"] = row.candidate.family;
    item["q_index"] = row.candidate.index;
    item["q_y"] = std::vector<double>(row.candidate.q.values().begin(), row.candidate.q.values().end());
    item["tv_to_q_star"] = row.tv_to_qstar;
    item["meta_converse"] = {{"alpha", row.mc.alpha_value},
                             {"lower_bound_eps", row.mc.lower_bound_eps},
                             {"gap", row.mc.identity_gap},
                             {"np_threshold", real(row.mc.np.threshold)},
                             {"np_gamma", row.mc.np.gamma}};
    item["info_spectrum"] = {{"lambda_opt", real(row.is.lambda_opt)},
                             {"sup_value", row.is.sup_value},
                             {"lower_bound_eps", row.is.lower_bound_eps},
                             {"gap", row.gap_is}};
    rows.push_back(std::move(item));
  }
  doc["bounds"] = std::move(rows);

  doc["oracle"] = {{"min_error_checked", r.oracle.min_error_checked},
                   {"min_error_agrees", r.oracle.min_error_agrees},
                   {"np_dual_agrees", r.oracle.np_dual_agrees},
                   {"np_envelope_checked", r.oracle.np_envelope_checked},
                   {"np_envelope_agrees", r.oracle.np_envelope_agrees}};

  if (timestamped) {
    ojson timings;
    for (const auto& [stage, ms] : r.timings_ms) timings[stage] = ms;
    doc["timings_ms"] = std::move(timings);
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    doc["timestamp"] = buf;
  }
  return doc;
}

std::string report_csv(const AnalysisReport& r) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& row : r.rows) {
    out << r.instance_hash << ',' << r.M << ',' << r.L << ',' << r.card_y << ','
        << row.candidate.family << ',' << row.candidate.index << ','
        << format_real(r.error.eps_min) << ',' << format_real(row.mc.lower_bound_eps) << ','
        << format_real(row.is.lower_bound_eps) << ',' << format_real(row.mc.identity_gap) << ','
        << format_real(row.gap_is) << ',' << format_real(row.is.lambda_opt) << '\n';
  }
  return out.str();
}

}  // namespace listhyp::cli
