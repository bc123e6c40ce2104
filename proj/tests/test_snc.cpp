#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "bsideal/snc.hpp"
#include "test_support.hpp"

using namespace bsideal;
namespace bt = bsideal::testing;

namespace {

ResolutionGraph graph(std::size_t r, std::vector<std::pair<IntVector, long>> comps) {
  return ResolutionGraph::from_multiplicities(r, comps);
}

// L1 = (1,1), L2 = (0,2).
ResolutionGraph g_two() { return graph(2, {{{1, 1}, 0}, {{0, 2}, 0}}); }

// Local graph of F = (x, x*y): E_x has L = (1,1), E_y has L = (0,1).
ResolutionGraph g_xxy() { return graph(2, {{{1, 1}, 0}, {{0, 1}, 0}}); }

TorusCoset coset(std::size_t r, IntVector v, Rational theta = Rational(0)) {
  return TorusCoset(r, {Binding{std::move(v), std::move(theta)}});
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

ExponentMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t n, int max_entry) {
  std::uniform_int_distribution<int> d(0, max_entry);
  for (;;) {
    ExponentMatrix m(r, std::vector<int>(n));
    for (auto& row : m)
      for (auto& e : row) e = d(rng);
    bool ok = true;
    for (const auto& row : m)
      if (std::all_of(row.begin(), row.end(), [](int e) { return e == 0; })) ok = false;
    if (ok) return m;
  }
}

std::vector<int> random_a(std::mt19937& rng, std::size_t r, int max_entry) {
  std::uniform_int_distribution<int> d(0, max_entry);
  std::vector<int> a(r);
  for (;;) {
    for (auto& x : a) x = d(rng);
    if (std::any_of(a.begin(), a.end(), [](int x) { return x != 0; })) return a;
  }
}

}  // namespace

TEST(ResolutionGraph, DerivesMapsIntoAndValidates) {
  auto g = g_xxy();
  EXPECT_EQ(g.components()[0].maps_into, (std::set<std::size_t>{0, 1}));
  EXPECT_EQ(g.components()[1].maps_into, (std::set<std::size_t>{1}));
  EXPECT_THROW(graph(2, {{{0, 0}, 1}}), Error);
  EXPECT_THROW(graph(2, {{{1}, 1}}), Error);
  EXPECT_THROW(graph(2, {{{-1, 1}, 1}}), Error);
  EXPECT_THROW(ResolutionGraph(2, {{{1, 0}, 0, {1}}}), Error);
}

TEST(SupportK, Examples) {
  std::vector<int> a10{1, 0}, a11{1, 1}, a00{0, 0};
  EXPECT_EQ(support_K(g_two(), a10), (std::vector<std::size_t>{0}));
  EXPECT_EQ(support_K(g_two(), a11), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(code_of([&] { support_K(g_two(), a00); }), "empty-K");
}

TEST(SlopeSet, Examples) {
  std::vector<int> a11{1, 1}, a10{1, 0};
  EXPECT_EQ(slope_set(g_two(), a11), (SlopeSet{{1, 1}, {0, 1}}));
  EXPECT_EQ(slope_set(graph(2, {{{1, 0}, 1}}), a10), (SlopeSet{{1, 0}}));
  EXPECT_EQ(slope_set(graph(2, {{{2, 2}, 1}}), a10), (SlopeSet{{1, 1}}));
}

TEST(SlopeSet, InvariantUnderScalingA) {
  std::mt19937 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + trial % 3;
    auto m = random_matrix(rng, r, 1 + trial % 4, 3);
    auto g = monomial_graph(m);
    auto a = random_a(rng, r, 2);
    for (int l = 2; l <= 4; ++l) {
      std::vector<int> la(a);
      for (auto& x : la) x *= l;
      EXPECT_EQ(slope_set(g, la), slope_set(g, a));
    }
  }
}

TEST(SncBElement, Examples) {
  std::vector<int> a10{1, 0}, a01{0, 1}, a20{2, 0};
  EXPECT_EQ(snc_b_element(g_two(), a10), bt::poly("s1 + s2 + 1", 2));
  EXPECT_EQ(snc_b_element(g_two(), a01), bt::poly("(s1 + s2 + 1)*(2*s2 + 1)*(2*s2 + 2)", 2));
  EXPECT_EQ(snc_b_element(graph(2, {{{1, 0}, 1}}), a20), bt::poly("(s1 + 1)*(s1 + 2)", 2));
}

TEST(SncCertificate, Examples) {
  std::vector<int> a1{1}, a11{1, 1};
  auto c1 = snc_certificate({{1}}, a1);
  EXPECT_EQ(c1.b, bt::poly("s + 1", 1));
  EXPECT_EQ(c1.P, bt::op("dx", 1, 1));
  EXPECT_TRUE(verify(c1));

  auto c2 = snc_certificate({{1, 0}, {1, 1}}, a11);
  EXPECT_EQ(c2.b, bt::poly("(s1 + s2 + 1)*(s1 + s2 + 2)*(s2 + 1)", 2));
  EXPECT_EQ(c2.P, bt::op("dx^2*dy", 2, 2));
  EXPECT_TRUE(verify(c2));

  auto c3 = snc_certificate({{2}}, a1);
  EXPECT_EQ(c3.b, bt::poly("(2*s + 1)*(2*s + 2)", 1));
  EXPECT_EQ(c3.P, bt::op("dx^2", 1, 1));
  EXPECT_TRUE(verify(c3));
}

TEST(SncCertificate, RandomInstancesVerifyAndDecompose) {
  std::mt19937 rng(123);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 3;
    const std::size_t n = 1 + (trial / 3) % 4;
    auto m = random_matrix(rng, r, n, 3);
    auto a = random_a(rng, r, 1);
    auto g = monomial_graph(m);
    std::vector<std::size_t> K;
    try {
      K = support_K(g, a);
    } catch (const Error&) {
      continue;
    }
    auto cert = snc_certificate(m, a);
    EXPECT_TRUE(verify(cert));
    auto dec = extract_hyperplanes(cert.b, 3);
    EXPECT_EQ(dec.remainder.degree(), 0);
    SlopeSet found;
    std::vector<Hyperplane> hs;
    for (const auto& f : dec.factors) {
      found.insert(f.hyperplane.slope());
      hs.push_back(f.hyperplane);
      EXPECT_GT(f.hyperplane.intercept(), 0);
    }
    EXPECT_EQ(found, slope_set(g, a));
    EXPECT_TRUE(check_theorem_A(hs, a).all_pass());
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(PullbackSlopeCheck, Examples) {
  std::vector<int> a10{1, 0}, a11{1, 1};
  EXPECT_TRUE(pullback_slope_check(SlopeSet{{1, 1}}, g_xxy(), a10));
  EXPECT_TRUE(pullback_slope_check(SlopeSet{}, g_xxy(), a11));
  EXPECT_FALSE(pullback_slope_check(SlopeSet{{2, 1}}, g_xxy(), a11));
}

TEST(MonZeta, Examples) {
  auto z1 = mon_zeta(graph(1, {{{2}, 1}}));
  EXPECT_EQ(to_string(z1), "(1 - t^2)");
  EXPECT_EQ(to_string(mon_zeta(g_xxy())), "1");
  EXPECT_TRUE(mon_zeta(g_xxy()).exponents().empty());
  auto z3 = mon_zeta(graph(2, {{{1, 0}, -1}}));
  EXPECT_EQ(to_string(z3), "(1 - t1)^-1");
}

TEST(SabbahSpecialize, Examples) {
  std::vector<long> m11{1, 1}, m23{2, 3};
  auto z1 = mon_zeta(graph(2, {{{1, 1}, 1}}));
  EXPECT_EQ(sabbah_specialize(z1, m11), mon_zeta(graph(1, {{{2}, 1}})));

  auto z2 = mon_zeta(graph(2, {{{1, 0}, 1}, {{0, 1}, 1}}));
  auto s2 = sabbah_specialize(z2, m23);
  EXPECT_EQ(to_string(s2), "(1 - t^2) * (1 - t^3)");

  auto z3 = mon_zeta(graph(2, {{{1, 0}, 1}, {{0, 1}, -1}}));
  EXPECT_EQ(to_string(sabbah_specialize(z3, m11)), "1");
  EXPECT_THROW(sabbah_specialize(z3, std::vector<long>{1, 0}), Error);
}

TEST(SabbahSpecialize, MatchesReweightedGraph) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<long> dchi(-2, 2), dm(1, 4), dL(0, 3), dk(1, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 3;
    std::vector<std::pair<IntVector, long>> comps;
    const long k = dk(rng);
    for (long c = 0; c < k; ++c) {
      IntVector L(r);
      for (auto& x : L) x = dL(rng);
      if (std::all_of(L.begin(), L.end(), [](long x) { return x == 0; })) L[0] = 1;
      comps.push_back({L, dchi(rng)});
    }
    auto g = graph(r, comps);
    std::vector<long> m(r);
    for (auto& x : m) x = dm(rng);
    EXPECT_EQ(sabbah_specialize(mon_zeta(g), m), mon_zeta(g.reweighted(m)));
  }
}

TEST(SupportLoci, Examples) {
  std::vector<int> a10{1, 0}, a01{0, 1}, a11{1, 1};
  const auto l12 = coset(2, {1, 1});
  const auto l2 = coset(2, {0, 1});
  EXPECT_EQ(support_loci(g_xxy(), a10), (std::vector<TorusCoset>{l12}));
  auto s01 = support_loci(g_xxy(), a01);
  EXPECT_TRUE(union_equal(s01, std::vector<TorusCoset>{l12, l2}));
  auto s11 = support_loci(g_xxy(), a11);
  EXPECT_TRUE(union_equal(s11, std::vector<TorusCoset>{l12, l2}));
  EXPECT_EQ(code_of([&] { support_loci(g_xxy(), std::vector<int>{0, 0}); }), "empty-K");
}

TEST(SupportLoci, NonPrimitiveMultiplicitySplits) {
  std::vector<int> a1{1};
  auto loci = support_loci(graph(1, {{{2}, 1}}), a1);
  EXPECT_EQ(loci, (std::vector<TorusCoset>{coset(1, {1}), coset(1, {1}, Rational(1, 2))}));
}

TEST(SupportLoci, UnionOverAxes) {
  std::mt19937 rng(90);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 3;
    auto g = monomial_graph(random_matrix(rng, r, 1 + trial % 4, 3));
    auto a = random_a(rng, r, 2);
    std::vector<TorusCoset> uni;
    for (std::size_t i = 0; i < r; ++i) {
      if (a[i] == 0) continue;
      std::vector<int> e(r, 0);
      e[i] = 1;
      auto part = support_loci(g, e);
      uni.insert(uni.end(), part.begin(), part.end());
    }
    EXPECT_TRUE(union_equal(support_loci(g, a), uni));
  }
}

TEST(MonomialGraph, OneComponentPerUsedCoordinate) {
  auto g = monomial_graph({{1, 0, 0}, {1, 1, 0}});
  ASSERT_EQ(g.components().size(), 2U);
  EXPECT_EQ(g.components()[0].L, (IntVector{1, 1}));
  EXPECT_EQ(g.components()[1].L, (IntVector{0, 1}));
  EXPECT_EQ(monomial_graph({{2}}).components()[0].chi, 1);
}
