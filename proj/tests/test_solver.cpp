#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "bsideal/solver.hpp"
#include "test_support.hpp"

using namespace bsideal;
namespace bt = bsideal::testing;

namespace {

SolveBounds bounds(int order, int b_degree, int x_degree = 0, int s_degree = 0) {
  SolveBounds b;
  b.max_operator_order = order;
  b.max_b_degree = b_degree;
  b.max_x_degree = x_degree;
  b.max_s_degree = s_degree;
  return b;
}

BSCertificate cert(const std::vector<std::string>& fs, std::size_t n, std::vector<int> a, const std::string& b,
                   const std::string& P) {
  const std::size_t r = fs.size();
  return BSCertificate{bt::poly(b, r), bt::op(P, n, r), bt::collection(fs, n), std::move(a)};
}

BSCertificate must_find(const std::vector<std::string>& fs, std::size_t n, std::vector<int> a,
                        const SolveBounds& sb) {
  auto c = find_bs_pair(bt::collection(fs, n), a, sb);
  if (!c) throw std::runtime_error("solver found nothing");
  EXPECT_TRUE(verify(*c));
  return *c;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST(Verify, Examples) {
  EXPECT_TRUE(verify(cert({"x"}, 1, {1}, "s + 1", "dx")));
  EXPECT_TRUE(verify(cert({"x^2 + y^2"}, 2, {1}, "(s + 1)^2", "1/4*dx^2 + 1/4*dy^2")));
  EXPECT_FALSE(verify(cert({"x"}, 1, {1}, "s + 2", "dx")));
}

TEST(Verify, RejectsMismatchedShapes) {
  auto c = cert({"x"}, 1, {1}, "s + 1", "dx");
  c.a = {1, 0};
  EXPECT_FALSE(verify(c));
}

TEST(FindBsPair, Examples) {
  auto c1 = must_find({"x"}, 1, {1}, bounds(1, 2));
  EXPECT_EQ(c1.b, bt::poly("s + 1", 1));
  EXPECT_EQ(c1.P, bt::op("dx", 1, 1));

  auto c2 = must_find({"x", "y"}, 2, {1, 1}, bounds(2, 2));
  EXPECT_EQ(c2.b, bt::poly("(s1 + 1)*(s2 + 1)", 2));
  EXPECT_EQ(c2.P, bt::op("dx*dy", 2, 2));

  auto c3 = must_find({"x", "x*y"}, 2, {1, 0}, bounds(1, 2));
  EXPECT_EQ(c3.b, bt::poly("s1 + s2 + 1", 2));
  EXPECT_EQ(c3.P, bt::op("dx", 2, 2));
}

TEST(FindBsPair, ClassicalBFunctions) {
  auto c = must_find({"x"}, 1, {2}, bounds(2, 2));
  EXPECT_EQ(c.b, bt::poly("(s + 1)*(s + 2)", 1));
  EXPECT_EQ(c.P, bt::op("dx^2", 1, 1));

  auto q = must_find({"x^2 + y^2"}, 2, {1}, bounds(2, 2));
  EXPECT_EQ(q.b, bt::poly("(s + 1)^2", 1));
  EXPECT_EQ(q.P, bt::op("1/4*dx^2 + 1/4*dy^2", 2, 1));
}

TEST(FindBsPair, MinimalDegreeBeatsLargerCandidates) {
  // (s+1)(s+2) is also reachable with dx^2 * x but s+1 has lower degree.
  auto c = must_find({"x"}, 1, {1}, bounds(2, 3, 1));
  EXPECT_EQ(c.b, bt::poly("s + 1", 1));
}

TEST(FindBsPair, BoundsTooSmall) {
  EXPECT_FALSE(find_bs_pair(bt::collection({"x^2 + y^2"}, 2), std::vector<int>{1}, bounds(1, 2)));
  EXPECT_EQ(code_of([] { sample_ideal(bt::collection({"x^2 + y^2"}, 2), std::vector<int>{1}, bounds(1, 2)); }),
            "no-solution-within-bounds");
}

TEST(FindBsPair, InvertibleFa) {
  EXPECT_EQ(code_of([] { find_bs_pair(bt::collection({"x"}, 1), std::vector<int>{0}, bounds(1, 1)); }),
            "invertible-f^a");
  EXPECT_EQ(code_of([] { find_bs_pair(bt::collection({"3", "x"}, 1), std::vector<int>{2, 0}, bounds(1, 1)); }),
            "invertible-f^a");
}

TEST(FindBsPair, MemoryCap) {
  auto sb = bounds(2, 2);
  sb.max_matrix_cells = 4;
  try {
    find_bs_pair(bt::collection({"x^2 + y^2"}, 2), std::vector<int>{1}, sb);
    FAIL();
  } catch (const MemoryCapExceeded& e) {
    EXPECT_EQ(e.code(), "no-solution-within-bounds");
  }
}

TEST(SampleIdeal, Examples) {
  auto s1 = sample_ideal(bt::collection({"x"}, 1), std::vector<int>{1}, bounds(1, 2));
  ASSERT_EQ(s1.size(), 1U);
  EXPECT_EQ(s1[0], bt::poly("s + 1", 1));

  auto s2 = sample_ideal(bt::collection({"x", "x*y"}, 2), std::vector<int>{0, 1}, bounds(2, 2));
  const auto want = bt::poly("(s2 + 1)*(s1 + s2 + 1)", 2);
  EXPECT_NE(std::find_if(s2.begin(), s2.end(), [&](const ParamPoly& b) { return b.monic() == want.monic(); }),
            s2.end());

  auto s3 = sample_ideal(bt::collection({"x", "y"}, 2), std::vector<int>{1, 0}, bounds(1, 2));
  EXPECT_NE(std::find(s3.begin(), s3.end(), bt::poly("s1 + 1", 2)), s3.end());
}

TEST(SampleIdeal, EveryCertificateVerifiesAndBsAreDistinct) {
  const std::vector<std::pair<std::vector<std::string>, std::vector<int>>> cases{
      {{"x", "x*y"}, {1, 1}}, {{"x^2 + y^2"}, {1}}, {{"x", "y"}, {1, 1}}, {{"x*y"}, {1}}};
  for (const auto& [fs, a] : cases) {
    auto F = bt::collection(fs, 2);
    const auto strategies = sampling_strategies(2, 3);
    auto certs = sample_ideal_certificates(F, a, bounds(3, 3), strategies);
    std::set<ParamPoly> seen;
    for (const auto& c : certs) {
      EXPECT_TRUE(verify(c));
      EXPECT_TRUE(seen.insert(c.b.monic()).second);
    }
  }
}

TEST(SampleIdeal, StrategyListIsFixed) {
  const auto s = sampling_strategies(2, 2);
  std::vector<std::string> names;
  for (const auto& x : s) names.push_back(x.name);
  EXPECT_EQ(names, (std::vector<std::string>{"full", "axis:1", "axis:2", "homogeneous:1", "homogeneous:2"}));
  EXPECT_EQ(s[0].betas.size(), 6U);
  EXPECT_EQ(s[1].betas.size(), 3U);
  EXPECT_EQ(s[4].betas.size(), 3U);
}

TEST(SolverProperties, Monotonicity) {
  const std::vector<std::pair<std::vector<std::string>, std::vector<int>>> cases{
      {{"x"}, {1}}, {{"x", "x*y"}, {0, 1}}, {{"x^2 + y^2"}, {1}}, {{"x*y"}, {1}}};
  for (const auto& [fs, a] : cases) {
    auto small = must_find(fs, 2, a, bounds(2, 2));
    for (const auto& larger : {bounds(3, 2), bounds(2, 3), bounds(2, 2, 1), bounds(2, 2, 0, 1)}) {
      auto F = bt::collection(fs, 2);
      auto big = find_bs_pair(F, a, larger);
      ASSERT_TRUE(big);
      EXPECT_TRUE(verify(*big));
      // The small solution is still admissible, so the minimum can only drop.
      EXPECT_FALSE(GradedLexGreater{}(big->b.leading_monomial(), small.b.leading_monomial()));
      // And the old certificate still verifies inside the larger space.
      EXPECT_TRUE(verify(BSCertificate{small.b, small.P, F, a}));
    }
  }
}

TEST(SolverProperties, ShiftCompatibility) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<long> dk(-4, 4);
  const std::vector<std::pair<std::vector<std::string>, std::vector<int>>> cases{
      {{"x", "x*y"}, {0, 1}}, {{"x", "x*y"}, {1, 1}}, {{"x^2 + y^2"}, {1}}, {{"x", "y"}, {1, 1}}};
  for (const auto& [fs, a] : cases) {
    auto c = must_find(fs, 2, a, bounds(3, 3));
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<long> k(fs.size());
      for (auto& v : k) v = dk(rng);
      EXPECT_TRUE(verify_twisted(shift_certificate(c, k), k));
    }
  }
}

TEST(SolverProperties, DiagonalDivisibleBySPlusOne) {
  for (const std::string f : {"x", "x^2", "x*y", "x^2 + y^2", "x + y^2", "x^3"}) {
    auto c = must_find({f}, 2, {1}, bounds(3, 3));
    auto d = restrict_diagonal(c.b);
    EXPECT_TRUE(d.divide_exact(bt::poly("s + 1", 1))) << f;
  }
}

TEST(SolverProperties, FoundCertificatesForRandomMonomialsVerify) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> de(0, 2);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<std::string> fs;
    std::vector<int> a;
    for (int j = 0; j < 2; ++j) {
      int ex = de(rng), ey = de(rng);
      if (ex + ey == 0) ex = 1;
      fs.push_back("x^" + std::to_string(ex) + "*y^" + std::to_string(ey));
      a.push_back(de(rng) % 2);
    }
    if (a[0] + a[1] == 0) a[0] = 1;
    auto F = bt::collection(fs, 2);
    auto c = find_bs_pair(F, a, bounds(4, 4));
    if (c) {
      EXPECT_TRUE(verify(*c));
    }
  }
}
