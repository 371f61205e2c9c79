#include "listhyp/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "listhyp/error.hpp"

namespace listhyp {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step; divide by gcd first to delay overflow.
    std::uint64_t num = n - k + i;
    std::uint64_t den = i;
    const std::uint64_t g1 = std::gcd(num, den);
    num /= g1;
    den /= g1;
    const std::uint64_t g2 = std::gcd(result, den);
    result /= g2;
    den /= g2;
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw Error(ErrorCode::TooLarge,
                  "C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
    }
    result = result * num / den;
  }
  return result;
}

HypothesisList::HypothesisList(std::vector<std::uint32_t> entries, std::uint32_t M)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] >= M) {
      throw Error(ErrorCode::BadArgument, "hypothesis index out of range");
    }
    if (i > 0 && entries_[i] <= entries_[i - 1]) {
      throw Error(ErrorCode::BadArgument, "hypothesis list must be strictly increasing");
    }
  }
}

bool HypothesisList::contains(std::uint32_t x) const noexcept {
  return std::binary_search(entries_.begin(), entries_.end(), x);
}

std::vector<HypothesisList> enumerate_lists(std::uint32_t M, std::uint32_t L,
                                            std::uint64_t max_count) {
  if (L < 1 || L > M) {
    throw Error(ErrorCode::BadListSize,
                "list size " + std::to_string(L) + " not in [1, " + std::to_string(M) + "]");
  }
  const std::uint64_t count = binomial(M, L);
  if (count > max_count) {
    throw Error(ErrorCode::TooLarge, std::to_string(count) + " lists exceed the enumeration cap");
  }
  std::vector<HypothesisList> out;
  out.reserve(count);
  std::vector<std::uint32_t> state(L);
  std::iota(state.begin(), state.end(), 0u);
  while (true) {
    out.emplace_back(state, M);
    // Advance to the next combination in lexicographic order.
    std::int64_t i = static_cast<std::int64_t>(L) - 1;
    while (i >= 0 && state[i] == M - L + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++state[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < L; ++j) {
      state[j] = state[j - 1] + 1;
    }
  }
  return out;
}

std::uint64_t lex_rank(const HypothesisList& list, std::uint32_t M) {
  const auto e = list.entries();
  const auto L = static_cast<std::uint32_t>(e.size());
  std::uint64_t rank = 0;
  std::uint32_t next = 0;
  for (std::uint32_t i = 0; i < L; ++i) {
    // Count subsets that agree on the first i entries but pick a smaller i-th entry.
    for (std::uint32_t v = next; v < e[i]; ++v) rank += binomial(M - 1 - v, L - 1 - i);
    next = e[i] + 1;
  }
  return rank;
}

HypothesisList lex_unrank(std::uint64_t rank, std::uint32_t M, std::uint32_t L) {
  if (L < 1 || L > M) throw Error(ErrorCode::BadListSize, "list size out of range");
  if (rank >= binomial(M, L)) throw Error(ErrorCode::BadArgument, "rank out of range");
  std::vector<std::uint32_t> out;
  out.reserve(L);
  std::uint32_t v = 0;
  for (std::uint32_t i = 0; i < L; ++i) {
    while (true) {
      const std::uint64_t block = binomial(M - 1 - v, L - 1 - i);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    out.push_back(v++);
  }
  return HypothesisList(std::move(out), M);
}

}  // namespace listhyp
