#ifndef BSIDEAL_TESTS_TEST_SUPPORT_HPP
#define BSIDEAL_TESTS_TEST_SUPPORT_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bsideal/germ.hpp"
#include "bsideal/parser.hpp"
#include "bsideal/polynomial.hpp"
#include "bsideal/weyl.hpp"

namespace bsideal::testing {

inline std::vector<std::string> xy_names(std::size_t n) {
  static const char* base[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(base[i]);
  return out;
}

inline Polynomial poly(const std::string& text, std::size_t nvars, const std::string& stem = "s") {
  return parse_polynomial(text, parameter_names(nvars, stem));
}

inline Polynomial xpoly(const std::string& text, std::size_t n) {
  const auto names = xy_names(n);
  return parse_polynomial(text, names);
}

inline WeylNames names(std::size_t n, std::size_t r) { return WeylNames{xy_names(n), parameter_names(r)}; }

inline WeylOperator op(const std::string& text, std::size_t n, std::size_t r) {
  return parse_operator(text, names(n, r));
}

inline std::shared_ptr<const Collection> collection(const std::vector<std::string>& fs, std::size_t n) {
  std::vector<Polynomial> f;
  for (const auto& s : fs) f.push_back(xpoly(s, n));
  return std::make_shared<const Collection>(n, std::move(f));
}

/// Substitute s := k into a polynomial of Q[x, s], leaving Q[x].
inline Polynomial specialize_s(const Polynomial& g, std::size_t n, const std::vector<long>& k) {
  std::vector<Polynomial> images;
  for (std::size_t j = 0; j < n; ++j) images.push_back(Polynomial::variable(n, j));
  for (long v : k) images.push_back(Polynomial::constant(n, Rational(v)));
  return g.compose(images);
}

inline ParamPoly random_param_poly(std::mt19937& rng, std::size_t r, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> deg(0, max_deg);
  ParamPoly p(r);
  for (int t = 0; t < terms; ++t) {
    Exponents e(r, 0);
    for (auto& x : e) x = deg(rng);
    if (total_degree(e) > max_deg) continue;
    p.add_term(e, Rational(coef(rng)));
  }
  return p;
}

inline WeylOperator random_operator(std::mt19937& rng, std::size_t n, std::size_t r, int max_order, int max_x,
                                    int terms) {
  std::uniform_int_distribution<int> dord(0, max_order);
  std::uniform_int_distribution<int> dx(0, max_x);
  WeylOperator P(n, r);
  for (int t = 0; t < terms; ++t) {
    WeylMonomial m{Exponents(n, 0), Exponents(n, 0)};
    for (auto& a : m.alpha) a = dx(rng);
    for (auto& b : m.beta) b = dord(rng);
    P.add_term(m, random_param_poly(rng, r, 1, 2));
  }
  return P;
}

inline Polynomial random_x_poly(std::mt19937& rng, std::size_t n, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> deg(0, max_deg);
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    Exponents e(n, 0);
    for (auto& x : e) x = deg(rng);
    p.add_term(e, Rational(coef(rng)));
  }
  return p;
}

}  // namespace bsideal::testing

#endif  // BSIDEAL_TESTS_TEST_SUPPORT_HPP
