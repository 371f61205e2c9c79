#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace listhyp {

/// Binomial coefficient C(n, k). Returns 0 when k > n.
/// Throws Error(TooLarge) if the result does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// A canonical list of L distinct hypotheses: indices in [0, M), strictly increasing.
class HypothesisList {
 public:
  HypothesisList() = default;

  /// Validates and stores the indices; throws BadArgument unless strictly increasing and < M.
  HypothesisList(std::vector<std::uint32_t> entries, std::uint32_t M);

  std::span<const std::uint32_t> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(std::uint32_t x) const noexcept;

  friend auto operator<=>(const HypothesisList&, const HypothesisList&) = default;

 private:
  std::vector<std::uint32_t> entries_;
};

/// All C(M, L) canonical L-subsets of {0..M-1} in lexicographic order.
/// Throws BadListSize unless 1 <= L <= M, TooLarge if the count exceeds `max_count`.
std::vector<HypothesisList> enumerate_lists(std::uint32_t M, std::uint32_t L,
                                            std::uint64_t max_count = 50'000'000);

/// Position of `list` in the lexicographic enumeration of L-subsets of {0..M-1}.
std::uint64_t lex_rank(const HypothesisList& list, std::uint32_t M);

/// Inverse of lex_rank.
HypothesisList lex_unrank(std::uint64_t rank, std::uint32_t M, std::uint32_t L);

}  // namespace listhyp
