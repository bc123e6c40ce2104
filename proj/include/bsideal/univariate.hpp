#ifndef BSIDEAL_UNIVARIATE_HPP
#define BSIDEAL_UNIVARIATE_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "bsideal/error.hpp"
#include "bsideal/polynomial.hpp"

// Dense univariate helpers used for rational root extraction. Coefficient
// vectors are stored lowest degree first.

namespace bsideal::univariate {

using RatPoly = std::vector<Rational>;
using IntPoly = std::vector<Integer>;

template <class T>
void trim(std::vector<T>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly from_polynomial(const Polynomial& p) {
  if (p.nvars() != 1) throw Error(errc::invalid_argument, "expected a univariate polynomial");
  RatPoly out(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e[0])] = c;
  trim(out);
  return out;
}

inline RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

/// Remainder and quotient of a / b, b nonzero.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  if (b.empty()) throw Error(errc::invalid_argument, "division by zero polynomial");
  RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto rem = divmod(a, b).second;
    a = std::move(b);
    b = std::move(rem);
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

/// Integer multiple with coprime coefficients and positive leading term.
inline IntPoly primitive(const RatPoly& p) {
  Integer den = 1;
  for (const auto& c : p) den = lcm(den, Integer(c.get_den()));
  IntPoly out;
  Integer g = 0;
  for (const auto& c : p) {
    out.push_back(c.get_num() * (den / c.get_den()));
    g = ::gcd(g, out.back());
  }
  if (!out.empty() && out.back() < 0) g = -g;
  if (g != 0)
    for (auto& c : out) c /= g;
  return out;
}

inline Rational evaluate(const IntPoly& p, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + Rational(p[i]);
  return acc;
}

inline Integer evaluate_mod(const IntPoly& p, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * x + p[i];
    acc %= m;
  }
  if (acc < 0) acc += m;
  return acc;
}

namespace detail {

using ModPoly = std::vector<std::uint64_t>;

inline ModPoly reduce_mod(const IntPoly& p, std::uint64_t prime) {
  ModPoly out;
  const Integer m(static_cast<unsigned long>(prime));
  for (const auto& c : p) {
    Integer r = c % m;
    if (r < 0) r += m;
    out.push_back(r.get_ui());
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

inline std::size_t gcd_degree_mod(ModPoly a, ModPoly b, std::uint64_t p) {
  while (!b.empty()) {
    const std::uint64_t inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
      const std::size_t shift = a.size() - b.size();
      const std::uint64_t c = a.back() * inv % p;
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// All rational roots, sorted and without multiplicity.
///
/// The square-free part is reduced modulo a prime p that keeps it square-free
/// and does not divide its leading coefficient; roots mod p are Hensel-lifted
/// past 2|lc*c0| and read back as N/lc with N symmetric. Every rational root
/// q'/q (q | lc) reduces to a simple root mod p, so none is missed; every
/// candidate is confirmed by exact evaluation.
inline std::vector<Rational> rational_roots(const RatPoly& input) {
  RatPoly p = input;
  trim(p);
  if (p.empty()) throw Error(errc::invalid_argument, "zero polynomial has every root");
  std::set<Rational> roots;
  std::size_t low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) {
    roots.insert(Rational(0));
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (p.size() <= 1) return {roots.begin(), roots.end()};

  const RatPoly g = gcd(p, derivative(p));
  const IntPoly sqf = primitive(divmod(p, g).first);
  const std::size_t deg = sqf.size() - 1;
  if (deg == 1) {
    Rational root(-sqf[0], sqf[1]);
    root.canonicalize();
    roots.insert(root);
    return {roots.begin(), roots.end()};
  }
  const Integer& lc = sqf.back();
  const Integer& c0 = sqf.front();
  IntPoly dsqf;
  for (std::size_t i = 1; i < sqf.size(); ++i) dsqf.push_back(sqf[i] * static_cast<unsigned long>(i));

  std::uint64_t prime = 0;
  for (std::uint64_t cand = 3; cand < 1'000'000; ++cand) {
    if (!detail::is_prime(cand)) continue;
    const Integer m(static_cast<unsigned long>(cand));
    if (Integer(lc % m) == 0) continue;
    auto a = detail::reduce_mod(sqf, cand);
    auto b = detail::reduce_mod(dsqf, cand);
    if (b.empty() || detail::gcd_degree_mod(a, b, cand) != 0) continue;
    prime = cand;
    break;
  }
  if (prime == 0) throw Error(errc::invalid_argument, "no suitable prime for root lifting");

  const Integer pm(static_cast<unsigned long>(prime));
  const Integer bound = 2 * abs(lc) * abs(c0) + 1;
  Integer modulus = pm;
  while (modulus <= bound) modulus *= pm;

  for (std::uint64_t t = 0; t < prime; ++t) {
    Integer x(static_cast<unsigned long>(t));
    if (evaluate_mod(sqf, x, pm) != 0) continue;
    for (int iter = 0; iter < 128; ++iter) {
      Integer fx = evaluate_mod(sqf, x, modulus);
      if (fx == 0) break;
      Integer dfx = evaluate_mod(dsqf, x, modulus);
      Integer inv;
      if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), modulus.get_mpz_t()) == 0) break;
      x = (x - fx * inv) % modulus;
      if (x < 0) x += modulus;
    }
    Integer num = (lc * x) % modulus;
    if (num < 0) num += modulus;
    if (2 * num > modulus) num -= modulus;
    Rational cand(num, lc);
    cand.canonicalize();
    if (evaluate(sqf, cand) == 0) roots.insert(cand);
  }
  return {roots.begin(), roots.end()};
}

}  // namespace bsideal::univariate

#endif  // BSIDEAL_UNIVARIATE_HPP
