#include <set>

#include "doctest.h"
#include "listhyp/combinatorics.hpp"
#include "listhyp/error.hpp"

using namespace listhyp;

namespace {

std::uint64_t factorial_binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

std::vector<std::vector<std::uint32_t>> as_vectors(const std::vector<HypothesisList>& lists) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& l : lists) out.emplace_back(l.entries().begin(), l.entries().end());
  return out;
}

}  // namespace

TEST_CASE("binomial matches the factorial formula") {
  for (std::uint64_t n = 0; n <= 20; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) CHECK(binomial(n, k) == factorial_binomial(n, k));
  }
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ULL);
  CHECK_THROWS_AS(binomial(200, 100), Error);
}

TEST_CASE("enumerate_lists small cases") {
  using V = std::vector<std::vector<std::uint32_t>>;
  CHECK(as_vectors(enumerate_lists(3, 2)) == V{{0, 1}, {0, 2}, {1, 2}});
  CHECK(as_vectors(enumerate_lists(4, 1)) == V{{0}, {1}, {2}, {3}});
  CHECK(enumerate_lists(5, 3).size() == factorial_binomial(5, 3));
  CHECK(enumerate_lists(4, 4).size() == 1);
}

TEST_CASE("enumerate_lists rejects bad list sizes") {
  try {
    enumerate_lists(3, 0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadListSize);
  }
  CHECK_THROWS_AS(enumerate_lists(3, 4), Error);
}

TEST_CASE("enumeration is strictly increasing, complete, and rank-consistent") {
  for (std::uint32_t M = 1; M <= 8; ++M) {
    for (std::uint32_t L = 1; L <= M; ++L) {
      const auto lists = enumerate_lists(M, L);
      REQUIRE(lists.size() == binomial(M, L));
      std::vector<std::uint64_t> appearances(M, 0);
      for (std::size_t i = 0; i < lists.size(); ++i) {
        if (i > 0) CHECK(lists[i - 1] < lists[i]);
        CHECK(lex_rank(lists[i], M) == i);
        CHECK(lex_unrank(i, M, L) == lists[i]);
        for (auto x : lists[i].entries()) ++appearances[x];
      }
      // Each hypothesis sits in exactly C(M-1, L-1) lists.
      for (auto a : appearances) CHECK(a == binomial(M - 1, L - 1));
    }
  }
}

TEST_CASE("HypothesisList validates canonical form") {
  CHECK_NOTHROW(HypothesisList({0, 2, 5}, 6));
  CHECK_THROWS_AS(HypothesisList({2, 1}, 6), Error);
  CHECK_THROWS_AS(HypothesisList({1, 1}, 6), Error);
  CHECK_THROWS_AS(HypothesisList({6}, 6), Error);
  const HypothesisList l({1, 3}, 4);
  CHECK(l.contains(3));
  CHECK_FALSE(l.contains(2));
}
