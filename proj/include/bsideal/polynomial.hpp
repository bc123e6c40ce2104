#ifndef BSIDEAL_POLYNOMIAL_HPP
#define BSIDEAL_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bsideal/error.hpp"

namespace bsideal {

using Rational = mpq_class;
using Integer = mpz_class;
using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

/// Graded lexicographic order, largest monomial first.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

inline bool divides(const Exponents& d, const Exponents& e) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > e[i]) return false;
  return true;
}

inline Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Exponents operator-(const Exponents& a, const Exponents& b) {
  Exponents r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Exponents unit_exponent(std::size_t nvars, std::size_t i) {
  Exponents e(nvars, 0);
  e[i] = 1;
  return e;
}

/// Every exponent vector in `nvars` variables of total degree <= `max_degree`,
/// listed in graded lex order with the smallest monomial first.
inline std::vector<Exponents> monomials_up_to(std::size_t nvars, int max_degree) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 >= nvars) {
      if (nvars > 0) {
        for (int k = 0; k <= left; ++k) {
          cur[i] = k;
          out.push_back(cur);
        }
        cur[i] = 0;
      } else {
        out.push_back(cur);
      }
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
    cur[i] = 0;
  };
  if (max_degree >= 0) rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(),
            [](const Exponents& a, const Exponents& b) { return GradedLexGreater{}(b, a); });
  return out;
}

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept in graded lex order (leading term first); zero
/// coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t i) {
    assert(i < nvars);
    Polynomial p(nvars);
    p.add_term(unit_exponent(nvars, i), Rational(1));
    return p;
  }

  static Polynomial monomial(Exponents e, const Rational& c = Rational(1)) {
    Polynomial p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  Rational constant_term() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  int degree_in(std::size_t i) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }

  const Exponents& leading_monomial() const {
    assert(!is_zero());
    return terms_.begin()->first;
  }
  const Rational& leading_coefficient() const {
    assert(!is_zero());
    return terms_.begin()->second;
  }

  void add_term(Exponents e, const Rational& c) {
    assert(e.size() == nvars_);
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [e, v] : terms_) v *= c;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// Multiply by the monomial c*x^e.
  Polynomial times_monomial(const Exponents& e, const Rational& c = Rational(1)) const {
    Polynomial r(nvars_);
    if (c == 0) return r;
    for (const auto& [t, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), t + e, v * c);
    return r;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return result;
  }

  Polynomial derivative(std::size_t i) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      --d[i];
      r.add_term(std::move(d), c * e[i]);
    }
    return r;
  }

  Rational evaluate(std::span<const Rational> point) const {
    assert(point.size() == nvars_);
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      sum += t;
    }
    return sum;
  }

  /// Substitute variable i by images[i]; all images share one ring.
  Polynomial compose(std::span<const Polynomial> images) const {
    assert(images.size() == nvars_);
    const std::size_t m = images.empty() ? 0 : images.front().nvars();
    Polynomial r(m);
    std::vector<std::vector<Polynomial>> powers(nvars_);
    auto power = [&](std::size_t i, int k) -> const Polynomial& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(m, Rational(1)));
      while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[i]);
      return cache[static_cast<std::size_t>(k)];
    };
    for (const auto& [e, c] : terms_) {
      Polynomial t = constant(m, c);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] > 0) t *= power(i, e[i]);
      r += t;
    }
    return r;
  }

  /// Re-home into a ring with `nvars` variables; variable i goes to slot
  /// offset + i.
  Polynomial embed(std::size_t nvars, std::size_t offset) const {
    assert(offset + nvars_ <= nvars);
    Polynomial r(nvars);
    for (const auto& [e, c] : terms_) {
      Exponents f(nvars, 0);
      std::copy(e.begin(), e.end(), f.begin() + static_cast<std::ptrdiff_t>(offset));
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  /// Keep only variables [offset, offset+count); every term must have zero
  /// exponent outside that window.
  Polynomial project(std::size_t offset, std::size_t count) const {
    Polynomial r(count);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i)
        if ((i < offset || i >= offset + count) && e[i] != 0)
          throw Error(errc::invalid_argument, "polynomial depends on a variable outside the window");
      r.terms_.emplace(Exponents(e.begin() + static_cast<std::ptrdiff_t>(offset),
                                 e.begin() + static_cast<std::ptrdiff_t>(offset + count)),
                       c);
    }
    return r;
  }

  /// Homogeneous component of top total degree.
  Polynomial top_component() const {
    Polynomial r(nvars_);
    const int d = degree();
    for (const auto& [e, c] : terms_) {
      if (total_degree(e) != d) break;
      r.terms_.emplace(e, c);
    }
    return r;
  }

  /// Quotient if `divisor` divides this polynomial exactly, otherwise nullopt.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const {
    check_same(divisor);
    if (divisor.is_zero()) throw Error(errc::invalid_argument, "division by zero polynomial");
    Polynomial rem = *this;
    Polynomial quot(nvars_);
    const Exponents& lm = divisor.leading_monomial();
    const Rational& lc = divisor.leading_coefficient();
    while (!rem.is_zero()) {
      const Exponents& top = rem.leading_monomial();
      if (!bsideal::divides(lm, top)) return std::nullopt;
      Exponents q = top - lm;
      Rational c = rem.leading_coefficient() / lc;
      rem -= divisor.times_monomial(q, c);
      quot.add_term(std::move(q), c);
    }
    return quot;
  }

  /// Scale so that the leading coefficient is 1; zero stays zero.
  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * Rational(1 / leading_coefficient());
  }

  /// Scale to coprime integer coefficients with positive leading coefficient.
  Polynomial primitive() const {
    if (is_zero()) return *this;
    Integer den = 1;
    Integer num = 0;
    for (const auto& [e, c] : terms_) {
      den = lcm(den, Integer(c.get_den()));
      num = gcd(num, Integer(c.get_num()));
    }
    Rational scale(den, num);
    scale.canonicalize();
    if (leading_coefficient() < 0) scale = -scale;
    return *this * scale;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Total order used for canonical sorting of polynomial lists.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return GradedLexGreater{}(ib->first, ia->first);
      if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
  }

 private:
  void check_same(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw Error(errc::invalid_argument, "polynomial ring mismatch");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

/// Render a monomial as "x^2*y"; empty string for the unit monomial.
inline std::string monomial_to_string(const Exponents& e, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (e[i] != 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

/// Canonical text form: terms in graded lex order, coefficients as p/q in
/// lowest terms, e.g. "s1*s2 - 1/2*s1 + 3".
inline std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  assert(names.size() == p.nvars());
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono = monomial_to_string(e, names);
    if (mono.empty()) {
      os << rational_to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << rational_to_string(mag) << '*' << mono;
    }
  }
  return os.str();
}

/// Parameter names "s" (one parameter) or "s1".."sr".
inline std::vector<std::string> parameter_names(std::size_t r, const std::string& stem = "s") {
  if (r == 1) return {stem};
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= r; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

/// ParamPoly: polynomial in s_1..s_r.
using ParamPoly = Polynomial;

/// p(s) -> p(s + k).
inline ParamPoly shift_s(const ParamPoly& p, std::span<const long> k) {
  const std::size_t r = p.nvars();
  if (k.size() != r) throw Error(errc::invalid_argument, "shift vector length mismatch");
  std::vector<Polynomial> images;
  images.reserve(r);
  for (std::size_t i = 0; i < r; ++i)
    images.push_back(Polynomial::variable(r, i) + Polynomial::constant(r, Rational(k[i])));
  return p.compose(images);
}

inline ParamPoly shift_s(const ParamPoly& p, std::initializer_list<long> k) {
  std::vector<long> v(k);
  return shift_s(p, std::span<const long>(v));
}

/// s_i -> s for every i; the result is univariate.
inline Polynomial restrict_diagonal(const ParamPoly& p) {
  std::vector<Polynomial> images(p.nvars(), Polynomial::variable(1, 0));
  if (p.nvars() == 0) return Polynomial::constant(1, p.constant_term());
  return p.compose(images);
}

}  // namespace bsideal

#endif  // BSIDEAL_POLYNOMIAL_HPP
