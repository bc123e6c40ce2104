#ifndef BSIDEAL_IDEAL_GEOMETRY_HPP
#define BSIDEAL_IDEAL_GEOMETRY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsideal/polynomial.hpp"
#include "bsideal/univariate.hpp"

namespace bsideal {

using IntVector = std::vector<long>;

inline long vector_gcd(std::span<const long> v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, x);
  return g;
}

inline long dot(std::span<const long> a, std::span<const long> b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Primitive form of a nonzero integer vector: entries divided by their gcd,
/// sign chosen so that the first nonzero entry is positive.
inline IntVector primitive_vector(IntVector v) {
  long g = vector_gcd(v);
  if (g == 0) throw Error(errc::invalid_argument, "zero vector has no primitive form");
  auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

/// Affine hyperplane L*s + b = 0 in canonical form: L primitive with first
/// nonzero entry positive.
class Hyperplane {
 public:
  /// Canonicalize c_1 s_1 + ... + c_r s_r + c_0 with rational coefficients.
  static Hyperplane from_coefficients(std::span<const Rational> slope, const Rational& intercept) {
    Integer den = 1;
    for (const auto& c : slope) den = lcm(den, Integer(c.get_den()));
    std::vector<Integer> scaled;
    Integer g = 0;
    for (const auto& c : slope) {
      scaled.push_back(c.get_num() * (den / c.get_den()));
      g = gcd(g, scaled.back());
    }
    if (g == 0) throw Error(errc::invalid_argument, "hyperplane slope must be nonzero");
    auto first = std::find_if(scaled.begin(), scaled.end(), [](const Integer& x) { return x != 0; });
    if (*first < 0) g = -g;
    IntVector L;
    for (const auto& x : scaled) {
      Integer q = x / g;
      if (!q.fits_slong_p()) throw Error(errc::invalid_argument, "hyperplane slope too large");
      L.push_back(q.get_si());
    }
    Rational b = intercept * Rational(den) / Rational(g);
    b.canonicalize();
    return Hyperplane(std::move(L), std::move(b));
  }

  static Hyperplane from_linear(const ParamPoly& p) {
    if (p.degree() != 1) throw Error(errc::invalid_argument, "not an affine-linear polynomial");
    std::vector<Rational> slope(p.nvars(), Rational(0));
    for (std::size_t i = 0; i < p.nvars(); ++i) slope[i] = p.coefficient(unit_exponent(p.nvars(), i));
    return from_coefficients(slope, p.constant_term());
  }

  Hyperplane(IntVector slope, Rational intercept) : L_(std::move(slope)), b_(std::move(intercept)) {
    if (L_.empty() || primitive_vector(L_) != L_)
      throw Error(errc::invalid_argument, "hyperplane slope is not in primitive normal form");
    b_.canonicalize();
  }

  const IntVector& slope() const noexcept { return L_; }
  const Rational& intercept() const noexcept { return b_; }
  std::size_t dimension() const noexcept { return L_.size(); }

  ParamPoly polynomial() const {
    const std::size_t r = L_.size();
    ParamPoly p = ParamPoly::constant(r, b_);
    for (std::size_t i = 0; i < r; ++i) p.add_term(unit_exponent(r, i), Rational(L_[i]));
    return p;
  }

  /// Image under s -> s + k: L*s + (b + L*k) = 0.
  Hyperplane shifted(std::span<const long> k) const { return Hyperplane(L_, b_ + Rational(dot(L_, k))); }

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;

  /// Ascending |L|_1, then L descending, then b ascending.
  friend bool operator<(const Hyperplane& x, const Hyperplane& y) {
    auto norm = [](const IntVector& v) {
      long s = 0;
      for (long e : v) s += std::abs(e);
      return s;
    };
    const long nx = norm(x.L_), ny = norm(y.L_);
    if (nx != ny) return nx < ny;
    if (x.L_ != y.L_) return x.L_ > y.L_;
    return x.b_ < y.b_;
  }

 private:
  IntVector L_;
  Rational b_;
};

/// Short form "(1,1;1/2)".
inline std::string to_string(const Hyperplane& h) {
  std::string out = "(";
  for (std::size_t i = 0; i < h.slope().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(h.slope()[i]);
  }
  return out + ";" + rational_to_string(h.intercept()) + ")";
}

inline std::string equation_string(const Hyperplane& h) {
  const auto names = parameter_names(h.dimension());
  return to_string(h.polynomial(), names) + " = 0";
}

struct HyperplaneFactor {
  Hyperplane hyperplane;
  int multiplicity;
};

struct HyperplaneDecomposition {
  std::vector<HyperplaneFactor> factors;
  ParamPoly remainder;
};

/// Every primitive L in Z^r with entries in [-bound, bound] and first nonzero
/// entry positive, sorted by the hyperplane slope order.
inline std::vector<IntVector> primitive_slopes(std::size_t r, int bound) {
  std::vector<IntVector> out;
  IntVector cur(r, -bound);
  for (;;) {
    if (vector_gcd(cur) == 1 && primitive_vector(cur) == cur) out.push_back(cur);
    std::size_t i = 0;
    while (i < r && cur[i] == bound) cur[i++] = -bound;
    if (i == r) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) {
    return Hyperplane(a, 0) < Hyperplane(b, 0);
  });
  return out;
}

namespace detail {

/// Base points for restricting to the line P0 + t*L; the first one giving a
/// nonzero restriction is used.
inline std::vector<std::vector<Rational>> line_base_points(std::size_t r) {
  static const long seeds[][6] = {{0, 0, 0, 0, 0, 0},  {1, 0, 0, 0, 0, 0},   {0, 1, 0, 0, 0, 0},
                                  {1, 2, 3, 4, 5, 6},  {3, -1, 4, -1, 5, -9}, {-2, 7, 1, -8, 2, 8},
                                  {11, 13, -17, 19, 23, -29}};
  std::vector<std::vector<Rational>> out;
  for (const auto& s : seeds) {
    std::vector<Rational> p(r);
    for (std::size_t i = 0; i < r; ++i) p[i] = Rational(s[i % 6] + static_cast<long>(i / 6) * 31);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// Divide out every affine-linear factor L*s + b with primitive slope L,
/// |L_i| <= slope_bound. Candidate intercepts are the rational roots of p
/// restricted to a line in direction L; each candidate is confirmed by exact
/// division, repeated to get the multiplicity. The product of the factors and
/// the remainder equals p.
inline HyperplaneDecomposition extract_hyperplanes(const ParamPoly& p, int slope_bound = 8) {
  if (p.is_zero()) throw Error(errc::invalid_argument, "cannot decompose the zero polynomial");
  if (slope_bound < 1) throw Error(errc::invalid_argument, "slope bound must be at least 1");
  const std::size_t r = p.nvars();
  HyperplaneDecomposition out{{}, p};
  if (r == 0) return out;
  const auto bases = detail::line_base_points(r);

  for (const IntVector& L : primitive_slopes(r, slope_bound)) {
    if (out.remainder.degree() < 1) break;
    ParamPoly linear(r);
    for (std::size_t i = 0; i < r; ++i) linear.add_term(unit_exponent(r, i), Rational(L[i]));
    if (!out.remainder.top_component().divide_exact(linear)) continue;

    const long LL = dot(L, L);
    std::vector<Rational> candidates;
    for (const auto& base : bases) {
      std::vector<Polynomial> line;
      for (std::size_t i = 0; i < r; ++i) {
        Polynomial coord = Polynomial::constant(1, base[i]);
        coord.add_term(Exponents{1}, Rational(L[i]));
        line.push_back(std::move(coord));
      }
      Polynomial u = out.remainder.compose(line);
      if (u.is_zero()) continue;
      Rational LP0(0);
      for (std::size_t i = 0; i < r; ++i) LP0 += Rational(L[i]) * base[i];
      for (const Rational& t : univariate::rational_roots(univariate::from_polynomial(u)))
        candidates.push_back(-(LP0 + t * Rational(LL)));
      break;
    }
    std::sort(candidates.begin(), candidates.end());
    for (const Rational& b : candidates) {
      Hyperplane h(L, b);
      const ParamPoly factor = h.polynomial();
      int mult = 0;
      while (auto q = out.remainder.divide_exact(factor)) {
        out.remainder = std::move(*q);
        ++mult;
      }
      if (mult > 0) out.factors.push_back({std::move(h), mult});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const HyperplaneFactor& x, const HyperplaneFactor& y) { return x.hyperplane < y.hyperplane; });
  return out;
}

/// Hyperplanes dividing every generator, i.e. the codimension-one part of the
/// zero locus of the ideal they generate that is visible as linear factors.
struct ZeroLocusSummary {
  std::vector<Hyperplane> hyperplanes;
  std::vector<ParamPoly> remainders;
};

inline ZeroLocusSummary common_hyperplanes(std::span<const ParamPoly> generators, int slope_bound = 8) {
  ZeroLocusSummary out;
  std::optional<std::set<Hyperplane>> common;
  for (const auto& g : generators) {
    auto dec = extract_hyperplanes(g, slope_bound);
    std::set<Hyperplane> hs;
    for (auto& f : dec.factors) hs.insert(f.hyperplane);
    if (!common) {
      common = std::move(hs);
    } else {
      std::set<Hyperplane> keep;
      std::set_intersection(common->begin(), common->end(), hs.begin(), hs.end(),
                            std::inserter(keep, keep.begin()));
      common = std::move(keep);
    }
    out.remainders.push_back(std::move(dec.remainder));
  }
  if (common) out.hyperplanes.assign(common->begin(), common->end());
  return out;
}

struct HyperplaneVerdict {
  Hyperplane hyperplane;
  bool slopes_nonnegative;
  bool intercept_positive;
  bool strict_index_exists;

  bool passes() const { return slopes_nonnegative && intercept_positive && strict_index_exists; }
};

/// Verdicts of the codimension-one structure predicate: slopes >= 0,
/// intercept > 0, and some i with a_i != 0 and l_i > 0.
struct StructureReport {
  std::vector<HyperplaneVerdict> verdicts;
  std::vector<ParamPoly> leftover;

  bool all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.passes(); });
  }
};

inline StructureReport check_theorem_A(std::span<const Hyperplane> hyps, std::span<const int> a,
                                       std::span<const ParamPoly> leftover = {}) {
  StructureReport report;
  for (const auto& h : hyps) {
    if (h.dimension() != a.size()) throw Error(errc::invalid_argument, "hyperplane dimension mismatch");
    const auto& L = h.slope();
    HyperplaneVerdict v{h, true, h.intercept() > 0, false};
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (L[i] < 0) v.slopes_nonnegative = false;
      if (a[i] != 0 && L[i] > 0) v.strict_index_exists = true;
    }
    report.verdicts.push_back(std::move(v));
  }
  report.leftover.assign(leftover.begin(), leftover.end());
  return report;
}

/// hyps_l == { h shifted by -l' e_i : h in hyps_1, 0 <= l' < l } as sets;
/// the shift sends L*s + b to L*s + (b + l' L_i). `i` is zero-based.
inline bool check_translation_union(std::span<const Hyperplane> hyps_l, std::span<const Hyperplane> hyps_1,
                                    std::size_t i, int l) {
  if (l < 1) throw Error(errc::invalid_argument, "translation count l must be >= 1");
  std::set<Hyperplane> expected;
  for (const auto& h : hyps_1) {
    if (i >= h.dimension()) throw Error(errc::invalid_argument, "index out of range");
    for (int lp = 0; lp < l; ++lp) expected.insert(Hyperplane(h.slope(), h.intercept() + Rational(lp * h.slope()[i])));
  }
  std::set<Hyperplane> actual(hyps_l.begin(), hyps_l.end());
  return actual == expected;
}

}  // namespace bsideal

#endif  // BSIDEAL_IDEAL_GEOMETRY_HPP
