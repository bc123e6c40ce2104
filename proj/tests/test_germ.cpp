#include <gtest/gtest.h>

#include <random>

#include "bsideal/germ.hpp"
#include "test_support.hpp"

using namespace bsideal;
namespace bt = bsideal::testing;

namespace {

GermElement symbol(const std::shared_ptr<const Collection>& F, std::vector<int> a) {
  return GermElement::power(F, a);
}

}  // namespace

TEST(Apply, DerivativeOfPower) {
  auto F = bt::collection({"x"}, 1);
  auto result = apply(bt::op("dx", 1, 1), symbol(F, {1}));
  auto expected = symbol(F, {0}).times_param(bt::poly("s + 1", 1));
  EXPECT_EQ(result, expected);
}

TEST(Apply, LaplacianOnSumOfSquares) {
  auto F = bt::collection({"x^2 + y^2"}, 2);
  auto P = bt::op("1/4*(dx^2 + dy^2)", 2, 1);
  auto result = apply(P, symbol(F, {1}));

  // Oracle: at s = k the symbol is the polynomial (x^2+y^2)^(k+1); the
  // Laplacian/4 of it must equal c_k (x^2+y^2)^k with c_k = (k+1)^2.
  const auto f = bt::xpoly("x^2 + y^2", 2);
  for (long k = 0; k <= 2; ++k) {
    Polynomial g = f.pow(static_cast<unsigned>(k + 1));
    Polynomial lap = (g.derivative(0).derivative(0) + g.derivative(1).derivative(1)) * Rational(1, 4);
    EXPECT_EQ(lap, f.pow(static_cast<unsigned>(k)) * Rational((k + 1) * (k + 1)));
    // The symbolic result specialized at s = k agrees.
    auto num = bt::specialize_s(result.numerator(), 2, {k});
    auto e = result.effective_exponent();
    EXPECT_EQ(num * f.pow(static_cast<unsigned>(k + e[0])), lap);
  }
  auto expected = symbol(F, {0}).times_param(bt::poly("(s + 1)^2", 1));
  EXPECT_EQ(result, expected);
}

TEST(Apply, SeparableMonomials) {
  auto F = bt::collection({"x", "y"}, 2);
  auto result = apply(bt::op("dx*dy", 2, 2), symbol(F, {1, 1}));
  EXPECT_EQ(result, symbol(F, {0, 0}).times_param(bt::poly("(s1 + 1)*(s2 + 1)", 2)));
}

TEST(GermElement, EqualityAlignsTwistsAndDenominators) {
  auto F = bt::collection({"x", "x*y"}, 2);
  // x * f^(s + (0,0)) == f^(s + (1,0)).
  auto a = symbol(F, {0, 0}).times(bt::xpoly("x", 2).embed(4, 0));
  EXPECT_EQ(a, symbol(F, {1, 0}));
  // 1/(x y) * f^(s + (0,1)) == f^s.
  GermElement b(F, Polynomial::constant(4, 1), {0, 1}, {0, 1});
  EXPECT_EQ(b, symbol(F, {0, 0}));
  EXPECT_FALSE(b == symbol(F, {0, 1}));
}

TEST(GermElement, ReduceCancelsPerFactor) {
  auto F = bt::collection({"x^2 + y^2", "y"}, 2);
  Polynomial num = (bt::xpoly("(x^2 + y^2)*y^2 * (x + 1)", 2)).embed(4, 0);
  GermElement g(F, num, {1, 3}, {0, 0});
  auto red = g.reduce();
  EXPECT_EQ(red.denominator(), (std::vector<int>{0, 1}));
  EXPECT_EQ(red.numerator(), bt::xpoly("x + 1", 2).embed(4, 0));
  EXPECT_EQ(red, g);
}

TEST(Apply, CompositionMatchesProduct) {
  std::mt19937 rng(17);
  auto F = bt::collection({"x^2 - y", "x*y + 1"}, 2);
  for (int trial = 0; trial < 15; ++trial) {
    auto P = bt::random_operator(rng, 2, 2, 2, 1, 2);
    auto Q = bt::random_operator(rng, 2, 2, 1, 1, 2);
    auto v = symbol(F, {1, 0});
    EXPECT_EQ(apply(P * Q, v), apply(P, apply(Q, v)));
  }
}

TEST(Apply, LinearInCoefficients) {
  std::mt19937 rng(4);
  auto F = bt::collection({"x*y - 1", "y^2"}, 2);
  for (int trial = 0; trial < 15; ++trial) {
    auto P = bt::random_operator(rng, 2, 2, 2, 1, 2);
    auto Q = bt::random_operator(rng, 2, 2, 2, 1, 2);
    auto c = bt::random_param_poly(rng, 2, 1, 2);
    auto v = symbol(F, {1, 1});
    EXPECT_EQ(apply(P.scaled(c) + Q, v), apply(P, v).times_param(c) + apply(Q, v));
  }
}

TEST(Apply, IntegerSpecializationMatchesOrdinaryCalculus) {
  std::mt19937 rng(99);
  const std::vector<std::vector<std::string>> collections{{"x^2 + y^2"}, {"x", "x*y"}, {"x - y^2", "y + 1"}};
  for (const auto& fs : collections) {
    auto F = bt::collection(fs, 2);
    const std::size_t r = F->r();
    for (int trial = 0; trial < 6; ++trial) {
      auto P = bt::random_operator(rng, 2, r, 2, 1, 3);
      std::vector<int> a(r, 1);
      auto result = apply(P, symbol(F, a));
      const auto e = result.effective_exponent();
      // Pick k so every exponent k_i + e_i is non-negative.
      std::vector<long> k(r);
      for (std::size_t i = 0; i < r; ++i) k[i] = std::max(0, -e[i]) + (trial % 2);
      // Oracle: ordinary polynomial calculus on prod f_i^(k_i + a_i).
      Polynomial target = Polynomial::constant(2, 1);
      for (std::size_t i = 0; i < r; ++i) target *= F->polys()[i].pow(static_cast<unsigned>(k[i] + a[i]));
      WeylOperator Pk(2, r);
      for (const auto& [m, c] : P.terms()) {
        std::vector<Rational> pt(k.begin(), k.end());
        Pk.add_term(m, ParamPoly::constant(r, c.evaluate(pt)));
      }
      Polynomial expected = Pk.apply_to(target.embed(2 + r, 0));
      Polynomial got = bt::specialize_s(result.numerator(), 2, k);
      for (std::size_t i = 0; i < r; ++i) got *= F->polys()[i].pow(static_cast<unsigned>(k[i] + e[i]));
      EXPECT_EQ(got.embed(2 + r, 0), expected);
    }
  }
}
