#include <gtest/gtest.h>

#include <algorithm>

#include "hbf/error.hpp"
#include "hbf/rnagell.hpp"

using namespace hbf;

namespace {

// Solutions with x < x_limit by scanning x and testing whether the right side is eta_sq * p^k.
std::vector<RNSolution> scan_x(const RNEquation& eq, std::uint64_t x_limit) {
  std::vector<RNSolution> out;
  for (std::uint64_t x = 0; x < x_limit; ++x) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(eq.d1) * x * x + eq.d2;
    unsigned __int128 pk = eq.eta_sq;
    for (int k = 0; k <= eq.k_max && pk <= lhs; ++k, pk *= eq.p) {
      if (pk == lhs) out.push_back({BigInt(x), k});
    }
  }
  std::sort(out.begin(), out.end(), [](const RNSolution& a, const RNSolution& b) { return a.k < b.k; });
  return out;
}

bool substitutes(const RNEquation& eq, const RNSolution& s) {
  BigInt pk = eq.eta_sq;
  for (int i = 0; i < s.k; ++i) pk *= eq.p;
  return BigInt(eq.d1) * s.x * s.x + eq.d2 == pk;
}

}  // namespace

TEST(RNSolve, FifteenXSquaredPlusOne) {
  const RNEquation eq{15, 1, 2, 2, 64};
  EXPECT_EQ(rn_solve(eq), (std::vector<RNSolution>{{1, 3}}));
  EXPECT_EQ(eq.to_string(), "15x^2 + 1 = 2*2^k");
}

TEST(RNSolve, ThreeXSquaredPlusFive) {
  const RNEquation eq{3, 5, 4, 2, 64};
  EXPECT_EQ(rn_solve(eq), (std::vector<RNSolution>{{1, 1}, {3, 3}, {13, 7}}));
}

TEST(RNSolve, PureSquareGivesZeroSolution) {
  const auto sols = rn_solve(RNEquation{1, 2, 1, 2, 20});
  ASSERT_FALSE(sols.empty());
  EXPECT_EQ(sols.front(), (RNSolution{0, 1}));
}

TEST(RNSolve, ClassicalRamanujanNagell) {
  // x^2 + 7 = 2^k
  const auto sols = rn_solve(RNEquation{1, 7, 1, 2, 128});
  std::vector<int> ks;
  for (const auto& s : sols) ks.push_back(s.k);
  EXPECT_EQ(ks, (std::vector<int>{3, 4, 5, 7, 15}));
  EXPECT_EQ(sols.back().x, 181);
}

TEST(RNSolve, AgreesWithScanOverX) {
  for (const RNEquation& eq : {RNEquation{1, 7, 1, 2, 40}, RNEquation{3, 5, 4, 2, 40}, RNEquation{15, 1, 2, 2, 40},
                               RNEquation{2, 1, 1, 3, 25}, RNEquation{1, 4, 1, 5, 20}, RNEquation{7, 9, 4, 2, 40}}) {
    const auto fast = rn_solve(eq);
    EXPECT_EQ(fast, scan_x(eq, 1u << 21)) << eq.to_string();
    for (const auto& s : fast) EXPECT_TRUE(substitutes(eq, s));
  }
}

TEST(RNSolve, StableWhenRaisingTheBound) {
  for (const RNEquation& base : {RNEquation{15, 1, 2, 2, 64}, RNEquation{3, 5, 4, 2, 64}}) {
    RNEquation wide = base;
    wide.k_max = 128;
    const auto all = rn_solve(wide);
    EXPECT_EQ(rn_solve(base), all);
    for (const auto& s : all) EXPECT_TRUE(substitutes(wide, s));
  }
}

TEST(RNSolve, Preconditions) {
  for (const RNEquation& eq : {RNEquation{0, 1, 1, 2, 8}, RNEquation{1, 0, 1, 2, 8}, RNEquation{1, 1, 3, 2, 8},
                               RNEquation{1, 1, 1, 4, 8}, RNEquation{1, 1, 1, 2, 129}, RNEquation{1, 1, 1, 2, -1}}) {
    try {
      rn_solve(eq);
      FAIL() << eq.to_string();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
    }
  }
}

TEST(RNLink, SurvivingKloostermanValues) {
  const auto r3 = rn_link_to_kloosterman(3);
  const auto r5 = rn_link_to_kloosterman(5);
  const auto r7 = rn_link_to_kloosterman(7);
  auto sorted = [](std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(sorted(r3.surviving_k), (std::vector<std::int64_t>{-4, 4}));
  EXPECT_TRUE(r5.candidates.empty());
  EXPECT_TRUE(r5.surviving_k.empty());
  EXPECT_EQ(r7.surviving_k, (std::vector<std::int64_t>{-12}));
  for (const auto* r : {&r3, &r5, &r7}) EXPECT_TRUE(r->q_zero_branch_empty);
}

TEST(RNLink, DiscardedCandidates) {
  auto has = [](const RNLinkReport& r, std::int64_t k) {
    return std::any_of(r.candidates.begin(), r.candidates.end(),
                       [&](const RNCandidate& c) { return c.k_value == k && !c.divisible_by_4; });
  };
  EXPECT_TRUE(has(rn_link_to_kloosterman(3), -2));
  EXPECT_TRUE(has(rn_link_to_kloosterman(7), 14));
}

TEST(RNLink, CandidatesSatisfyTheirBranch) {
  for (const int m1 : {3, 7, 9, 11}) {
    const std::int64_t h = std::int64_t{1} << m1;
    for (const RNCandidate& c : rn_link_to_kloosterman(m1).candidates) {
      const std::int64_t t = 1 - c.k_value;
      const bool first = 3 * t * t + 5 == 4 * h;
      const bool second = t % 5 == 0 && 15 * (t / 5) * (t / 5) + 1 == 2 * h;
      EXPECT_TRUE(first || second) << m1 << " K = " << c.k_value;
      EXPECT_EQ(c.divisible_by_4, c.k_value % 4 == 0);
    }
  }
  EXPECT_THROW(rn_link_to_kloosterman(4), Error);
  EXPECT_THROW(rn_link_to_kloosterman(1), Error);
}
