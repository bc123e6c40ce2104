#ifndef BSIDEAL_PARSER_HPP
#define BSIDEAL_PARSER_HPP

#include <cctype>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "bsideal/error.hpp"
#include "bsideal/polynomial.hpp"

namespace bsideal {

/// Hooks that let one recursive-descent grammar build values in different
/// rings (commutative polynomials, Weyl operators). Multiplication is taken
/// left to right, so a non-commutative ring sees factors in source order.
template <class R>
struct ExpressionRing {
  std::function<R(const Rational&)> constant;
  std::function<std::optional<R>(std::string_view)> identifier;
  std::function<std::optional<Rational>(const R&)> as_constant;
};

namespace detail {

template <class R>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ExpressionRing<R>& ring) : text_(text), ring_(ring) {}

  R parse() {
    R value = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(errc::parse_error,
                what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  R expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    R value = term();
    if (negate) value = ring_.constant(Rational(-1)) * value;
    for (;;) {
      if (accept('+')) {
        value = value + term();
      } else if (accept('-')) {
        value = value - term();
      } else {
        return value;
      }
    }
  }

  R term() {
    R value = factor();
    for (;;) {
      if (accept('*')) {
        value = value * factor();
      } else if (accept('/')) {
        R d = factor();
        auto c = ring_.as_constant(d);
        if (!c) fail("division by a non-constant");
        if (*c == 0) fail("division by zero");
        value = ring_.constant(Rational(1 / *c)) * value;
      } else {
        return value;
      }
    }
  }

  R factor() {
    R base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      R result = ring_.constant(Rational(1));
      for (unsigned long i = 0; i < k; ++i) result = result * base;
      return result;
    }
    return base;
  }

  R primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      R value = expr();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return ring_.constant(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto value = ring_.identifier(name);
      if (!value) {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      return *value;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const ExpressionRing<R>& ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class R>
R parse_expression(std::string_view text, const ExpressionRing<R>& ring) {
  return detail::ExpressionParser<R>(text, ring).parse();
}

/// Parse a polynomial in the named variables, e.g. "x^2 + 1/2*y".
inline Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  const std::size_t n = names.size();
  ExpressionRing<Polynomial> ring{
      [n](const Rational& c) { return Polynomial::constant(n, c); },
      [names, n](std::string_view id) -> std::optional<Polynomial> {
        for (std::size_t i = 0; i < n; ++i)
          if (names[i] == id) return Polynomial::variable(n, i);
        return std::nullopt;
      },
      [](const Polynomial& p) -> std::optional<Rational> {
        if (!p.is_constant()) return std::nullopt;
        return p.constant_term();
      }};
  return parse_expression(text, ring);
}

}  // namespace bsideal

#endif  // BSIDEAL_PARSER_HPP
