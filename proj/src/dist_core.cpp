#include "listhyp/dist_core.hpp"

#include <cmath>
#include <string>

#include "listhyp/error.hpp"
#include "listhyp/rng.hpp"
#include "listhyp/summation.hpp"

namespace listhyp {

std::vector<double> JointDistribution::column(std::size_t y) const {
  std::vector<double> col(M_);
  for (std::uint32_t x = 0; x < M_; ++x) col[x] = (*this)(x, y);
  return col;
}

std::vector<double> JointDistribution::output_marginal() const {
  std::vector<double> out(card_y());
  for (std::size_t y = 0; y < card_y(); ++y) out[y] = pairwise_sum(column(y));
  return out;
}

std::vector<double> JointDistribution::prior() const {
  std::vector<double> out(M_);
  for (std::uint32_t x = 0; x < M_; ++x) out[x] = pairwise_sum(row(x));
  return out;
}

JointDistribution validate_joint(const Matrix& raw, std::vector<std::string> outcome_labels) {
  if (raw.empty() || raw.front().empty()) {
    throw Error(ErrorCode::EmptyAlphabet, "joint distribution needs M >= 1 and |Y| >= 1");
  }
  const std::size_t card_y = raw.front().size();
  JointDistribution P;
  P.M_ = static_cast<std::uint32_t>(raw.size());
  P.p_.reserve(raw.size() * card_y);
  for (const auto& row : raw) {
    if (row.size() != card_y) throw Error(ErrorCode::BadArgument, "joint matrix rows are ragged");
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::BadArgument, "non-finite probability");
      if (v < kNegativeClamp) {
        throw Error(ErrorCode::NegativeMass, "entry " + std::to_string(v) + " is negative");
      }
      P.p_.push_back(v < 0.0 ? 0.0 : v);
    }
  }
  const double total = pairwise_sum(P.p_);
  if (std::abs(total - 1.0) > kRenormSlack) {
    throw Error(ErrorCode::NotNormalized, "total mass " + std::to_string(total));
  }
  if (total != 1.0) {
    for (auto& v : P.p_) v /= total;
  }
  if (outcome_labels.empty()) {
    outcome_labels.reserve(card_y);
    for (std::size_t y = 0; y < card_y; ++y) outcome_labels.push_back(std::to_string(y));
  }
  if (outcome_labels.size() != card_y) {
    throw Error(ErrorCode::BadArgument, "outcome label count does not match |Y|");
  }
  P.labels_ = std::move(outcome_labels);
  return P;
}

double ListJointDistribution::operator()(const HypothesisList& list, std::size_t y) const {
  if (list.size() != L_) throw Error(ErrorCode::BadListSize, "list has the wrong length");
  return at(lex_rank(list, M_), y);
}

ListJointDistribution build_list_joint(const JointDistribution& P, std::uint32_t L) {
  const std::uint32_t M = P.M();
  if (L < 1 || L > M) {
    throw Error(ErrorCode::BadListSize,
                "list size " + std::to_string(L) + " not in [1, " + std::to_string(M) + "]");
  }
  const std::uint64_t n_lists = binomial(M, L);
  if (n_lists > kMaxListCells / P.card_y()) {
    throw Error(ErrorCode::TooLarge, "C(M,L)*|Y| exceeds the list-joint cap");
  }
  ListJointDistribution out;
  out.M_ = M;
  out.L_ = L;
  out.card_y_ = P.card_y();
  out.lists_per_hypothesis_ = static_cast<double>(binomial(M - 1, L - 1));
  out.lists_ = enumerate_lists(M, L);
  out.p_.resize(out.lists_.size() * out.card_y_);
  for (std::size_t r = 0; r < out.lists_.size(); ++r) {
    const auto members = out.lists_[r].entries();
    for (std::size_t y = 0; y < out.card_y_; ++y) {
      double s = 0.0;
      for (auto x : members) s += P(x, y);
      out.p_[r * out.card_y_ + y] = s / out.lists_per_hypothesis_;
    }
  }
  return out;
}

ListPrior make_list_prior(std::uint32_t M, std::uint32_t L) {
  if (L < 1 || L > M) throw Error(ErrorCode::BadListSize, "list size out of range");
  return ListPrior{M, L, 1.0 / static_cast<double>(binomial(M, L))};
}

OutputDistribution::OutputDistribution(std::vector<double> q) : q_(std::move(q)) {
  if (q_.empty()) throw Error(ErrorCode::EmptyAlphabet, "output distribution is empty");
  for (double v : q_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::BadArgument, "non-finite probability");
    if (v < 0.0) throw Error(ErrorCode::NegativeMass, "output distribution has negative mass");
  }
  const double total = pairwise_sum(q_);
  if (std::abs(total - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized, "output distribution sums to " + std::to_string(total));
  }
}

OutputDistribution OutputDistribution::uniform(std::size_t n) {
  return OutputDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double total_variation(const OutputDistribution& a, const OutputDistribution& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::BadArgument, "alphabet size mismatch");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::abs(a[i] - b[i]);
  return 0.5 * pairwise_sum(d);
}

namespace {

void require_distribution(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::NegativeMass, std::string(what) + " has a negative or non-finite entry");
    }
  }
  const double total = pairwise_sum(v);
  if (std::abs(total - 1.0) > kRenormSlack) {
    throw Error(ErrorCode::NotNormalized, std::string(what) + " sums to " + std::to_string(total));
  }
}

}  // namespace

JointDistribution product_channel(std::span<const double> prior, const Matrix& channel,
                                  std::uint32_t n) {
  if (prior.empty() || channel.empty() || channel.front().empty()) {
    throw Error(ErrorCode::EmptyAlphabet, "prior and channel must be non-empty");
  }
  if (channel.size() != prior.size()) {
    throw Error(ErrorCode::BadArgument, "channel needs one row per hypothesis");
  }
  if (n < 1) throw Error(ErrorCode::BadArgument, "block length must be positive");
  require_distribution(prior, "prior");
  const std::size_t card_z = channel.front().size();
  for (const auto& row : channel) {
    if (row.size() != card_z) throw Error(ErrorCode::BadArgument, "channel rows are ragged");
    require_distribution(row, "channel row");
  }
  std::uint64_t card_y = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (card_y > kMaxProductOutcomes / card_z) {
      throw Error(ErrorCode::TooLarge, "|Z|^n exceeds 10^6 outcomes");
    }
    card_y *= card_z;
  }

  // Outcome index y encodes (z_1, ..., z_n) in base |Z| with z_1 most significant.
  std::vector<std::string> labels(card_y);
  std::vector<std::uint32_t> digits(n);
  Matrix raw(prior.size(), std::vector<double>(card_y));
  for (std::uint64_t y = 0; y < card_y; ++y) {
    std::uint64_t rem = y;
    for (std::uint32_t i = n; i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(rem % card_z);
      rem /= card_z;
    }
    std::string label;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i) label += ',';
      label += std::to_string(digits[i]);
    }
    labels[y] = std::move(label);
    for (std::size_t x = 0; x < prior.size(); ++x) {
      double v = prior[x];
      for (auto z : digits) v *= channel[x][z];
      raw[x][y] = v;
    }
  }
  return validate_joint(raw, std::move(labels));
}

JointDistribution random_instance(std::uint32_t M, std::size_t card_y, std::uint32_t L,
                                  std::uint64_t seed, double concentration) {
  if (M < 1 || card_y < 1) throw Error(ErrorCode::EmptyAlphabet, "need M >= 1 and |Y| >= 1");
  if (L < 1 || L > M) throw Error(ErrorCode::BadListSize, "list size out of range");
  if (!(concentration > 0.0) || !std::isfinite(concentration)) {
    throw Error(ErrorCode::BadArgument, "concentration must be positive");
  }
  Rng rng(seed);
  const auto cells = sample_dirichlet(rng, static_cast<std::size_t>(M) * card_y, concentration);
  Matrix raw(M, std::vector<double>(card_y));
  for (std::uint32_t x = 0; x < M; ++x) {
    for (std::size_t y = 0; y < card_y; ++y) raw[x][y] = cells[x * card_y + y];
  }
  return validate_joint(raw);
}

}  // namespace listhyp
