#ifndef BSIDEAL_WEYL_HPP
#define BSIDEAL_WEYL_HPP

#include <cassert>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bsideal/parser.hpp"
#include "bsideal/polynomial.hpp"

namespace bsideal {

/// Key of a normal-ordered term x^alpha d^beta.
struct WeylMonomial {
  Exponents alpha;  // powers of x_1..x_n
  Exponents beta;   // powers of d_1..d_n

  friend bool operator==(const WeylMonomial&, const WeylMonomial&) = default;
};

/// Graded lex on (beta, alpha), largest first.
struct WeylMonomialGreater {
  bool operator()(const WeylMonomial& a, const WeylMonomial& b) const {
    GradedLexGreater g;
    if (a.beta != b.beta) return g(a.beta, b.beta);
    if (a.alpha != b.alpha) return g(a.alpha, b.alpha);
    return false;
  }
};

/// Generator of the Weyl algebra: x_j or d_j.
struct WeylGenerator {
  enum class Kind { X, D } kind;
  std::size_t index;
};

/// Unnormalized term: coefficient times a word of generators, read left to
/// right.
struct RawWeylTerm {
  ParamPoly coefficient;
  std::vector<WeylGenerator> word;
};

/// Element of D[s] = Q[s_1..s_r]<x_1..x_n, d_1..d_n> in normal order: every
/// term is c(s) * x^alpha * d^beta with all x to the left of all d. The s are
/// central.
class WeylOperator {
 public:
  using TermMap = std::map<WeylMonomial, ParamPoly, WeylMonomialGreater>;

  WeylOperator() = default;
  WeylOperator(std::size_t n, std::size_t r) : n_(n), r_(r) {}

  static WeylOperator constant(std::size_t n, std::size_t r, const ParamPoly& c) {
    WeylOperator op(n, r);
    op.add_term(WeylMonomial{Exponents(n, 0), Exponents(n, 0)}, c);
    return op;
  }
  static WeylOperator constant(std::size_t n, std::size_t r, const Rational& c) {
    return constant(n, r, Polynomial::constant(r, c));
  }
  static WeylOperator x(std::size_t n, std::size_t r, std::size_t j) {
    WeylOperator op(n, r);
    op.add_term(WeylMonomial{unit_exponent(n, j), Exponents(n, 0)}, Polynomial::constant(r, 1));
    return op;
  }
  static WeylOperator d(std::size_t n, std::size_t r, std::size_t j) {
    WeylOperator op(n, r);
    op.add_term(WeylMonomial{Exponents(n, 0), unit_exponent(n, j)}, Polynomial::constant(r, 1));
    return op;
  }
  static WeylOperator monomial(WeylMonomial m, ParamPoly c) {
    WeylOperator op(m.alpha.size(), c.nvars());
    op.add_term(std::move(m), c);
    return op;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return r_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree in d; -1 for zero.
  int order() const {
    int o = -1;
    for (const auto& [m, c] : terms_) o = std::max(o, total_degree(m.beta));
    return o;
  }

  std::optional<ParamPoly> as_constant() const {
    if (terms_.empty()) return Polynomial(r_);
    if (terms_.size() != 1) return std::nullopt;
    const auto& [m, c] = *terms_.begin();
    if (total_degree(m.alpha) != 0 || total_degree(m.beta) != 0) return std::nullopt;
    return c;
  }

  void add_term(WeylMonomial m, const ParamPoly& c) {
    assert(m.alpha.size() == n_ && m.beta.size() == n_ && c.nvars() == r_);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  WeylOperator& operator+=(const WeylOperator& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  WeylOperator& operator-=(const WeylOperator& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
  friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }

  /// Multiply every coefficient by the central element c(s).
  WeylOperator scaled(const ParamPoly& c) const {
    WeylOperator out(n_, r_);
    for (const auto& [m, v] : terms_) out.add_term(m, v * c);
    return out;
  }

  /// Normal-ordered product via d^beta x^gamma =
  ///   sum_k prod_j C(beta_j,k_j) gamma_j!/(gamma_j-k_j)! x^(gamma-k) d^(beta-k).
  friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
    a.check_same(b);
    WeylOperator out(a.n_, a.r_);
    const std::size_t n = a.n_;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        const ParamPoly coeff = ca * cb;
        Exponents k(n, 0);
        auto rec = [&](auto&& self, std::size_t j, const Integer& weight) -> void {
          if (j == n) {
            WeylMonomial m{ma.alpha + (mb.alpha - k), (ma.beta - k) + mb.beta};
            out.add_term(std::move(m), coeff * Rational(weight));
            return;
          }
          const int top = std::min(ma.beta[j], mb.alpha[j]);
          for (int kj = 0; kj <= top; ++kj) {
            k[j] = kj;
            Integer w = weight * binomial(ma.beta[j], kj) * falling(mb.alpha[j], kj);
            self(self, j + 1, w);
          }
          k[j] = 0;
        };
        rec(rec, 0, Integer(1));
      }
    }
    return out;
  }

  friend bool operator==(const WeylOperator& a, const WeylOperator& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.terms_ == b.terms_;
  }

  /// Right multiplication by a single generator, using d_j x_j = x_j d_j + 1.
  WeylOperator times_generator(const WeylGenerator& g) const {
    WeylOperator out(n_, r_);
    for (const auto& [m, c] : terms_) {
      if (g.kind == WeylGenerator::Kind::D) {
        WeylMonomial next = m;
        ++next.beta[g.index];
        out.add_term(std::move(next), c);
      } else {
        WeylMonomial moved = m;
        ++moved.alpha[g.index];
        out.add_term(std::move(moved), c);
        if (m.beta[g.index] > 0) {
          WeylMonomial lowered = m;
          --lowered.beta[g.index];
          out.add_term(std::move(lowered), c * Rational(m.beta[g.index]));
        }
      }
    }
    return out;
  }

  /// Apply to a polynomial in (x_1..x_n, s_1..s_r), x first.
  Polynomial apply_to(const Polynomial& g) const {
    assert(g.nvars() == n_ + r_);
    Polynomial out(n_ + r_);
    for (const auto& [m, c] : terms_) {
      Polynomial t = g;
      for (std::size_t j = 0; j < n_; ++j)
        for (int k = 0; k < m.beta[j]; ++k) t = t.derivative(j);
      Exponents xs(n_ + r_, 0);
      std::copy(m.alpha.begin(), m.alpha.end(), xs.begin());
      out += t.times_monomial(xs) * c.embed(n_ + r_, n_);
    }
    return out;
  }

 private:
  static Integer binomial(int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
  }
  static Integer falling(int n, int k) {
    Integer r = 1;
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
  }

  void check_same(const WeylOperator& o) const {
    if (o.n_ != n_ || o.r_ != r_) throw Error(errc::invalid_argument, "Weyl algebra mismatch");
  }

  std::size_t n_ = 0;
  std::size_t r_ = 0;
  TermMap terms_;
};

/// Rewrite a list of words into normal order, one generator at a time.
inline WeylOperator normal_order(std::size_t n, std::size_t r, std::span<const RawWeylTerm> raw) {
  WeylOperator out(n, r);
  for (const RawWeylTerm& t : raw) {
    WeylOperator acc = WeylOperator::constant(n, r, t.coefficient);
    for (const WeylGenerator& g : t.word) {
      if (g.index >= n) throw Error(errc::invalid_argument, "generator index out of range");
      acc = acc.times_generator(g);
    }
    out += acc;
  }
  return out;
}

/// Re-normalizing an operator that is already normal ordered is the identity.
inline WeylOperator normal_order(const WeylOperator& op) {
  std::vector<RawWeylTerm> raw;
  for (const auto& [m, c] : op.terms()) {
    RawWeylTerm t{c, {}};
    for (std::size_t j = 0; j < op.n(); ++j)
      for (int k = 0; k < m.alpha[j]; ++k) t.word.push_back({WeylGenerator::Kind::X, j});
    for (std::size_t j = 0; j < op.n(); ++j)
      for (int k = 0; k < m.beta[j]; ++k) t.word.push_back({WeylGenerator::Kind::D, j});
    raw.push_back(std::move(t));
  }
  return normal_order(op.n(), op.r(), raw);
}

/// Names used for printing and parsing: x names, "d" + x name, s names.
struct WeylNames {
  std::vector<std::string> x;
  std::vector<std::string> s;

  std::string d(std::size_t j) const { return "d" + x[j]; }
};

/// Canonical text: terms largest first, e.g. "1/4*dx^2 + 1/4*dy^2" or
/// "(s1 + 1)*x*dy".
inline std::string to_string(const WeylOperator& op, const WeylNames& names) {
  if (op.is_zero()) return "0";
  std::vector<std::string> dnames;
  for (std::size_t j = 0; j < op.n(); ++j) dnames.push_back(names.d(j));
  std::string out;
  bool first = true;
  for (const auto& [m, c] : op.terms()) {
    std::string mono = monomial_to_string(m.alpha, names.x);
    std::string dm = monomial_to_string(m.beta, dnames);
    if (!dm.empty()) mono += (mono.empty() ? "" : "*") + dm;
    std::string coef;
    bool neg = false;
    if (c.size() == 1 && c.terms().begin()->second < 0) {
      neg = true;
      coef = to_string(-c, names.s);
    } else {
      coef = to_string(c, names.s);
    }
    if (c.size() > 1) coef = "(" + coef + ")";
    if (!first) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    first = false;
    if (mono.empty()) {
      out += coef;
    } else if (coef == "1") {
      out += mono;
    } else {
      out += coef + "*" + mono;
    }
  }
  return out;
}

/// Parse an operator; products are taken in the written order and then
/// normal ordered, so "dx*x" parses to x*dx + 1.
inline WeylOperator parse_operator(std::string_view text, const WeylNames& names) {
  const std::size_t n = names.x.size();
  const std::size_t r = names.s.size();
  ExpressionRing<WeylOperator> ring{
      [n, r](const Rational& c) { return WeylOperator::constant(n, r, c); },
      [&names, n, r](std::string_view id) -> std::optional<WeylOperator> {
        for (std::size_t j = 0; j < n; ++j) {
          if (names.x[j] == id) return WeylOperator::x(n, r, j);
          if (names.d(j) == id) return WeylOperator::d(n, r, j);
        }
        for (std::size_t i = 0; i < r; ++i)
          if (names.s[i] == id) return WeylOperator::constant(n, r, Polynomial::variable(r, i));
        return std::nullopt;
      },
      [](const WeylOperator& op) -> std::optional<Rational> {
        auto c = op.as_constant();
        if (!c || !c->is_constant()) return std::nullopt;
        return c->constant_term();
      }};
  return parse_expression(text, ring);
}

}  // namespace bsideal

#endif  // BSIDEAL_WEYL_HPP
