#ifndef BSIDEAL_TORUS_HPP
#define BSIDEAL_TORUS_HPP

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsideal/ideal_geometry.hpp"
#include "bsideal/polynomial.hpp"

namespace bsideal {

/// Reduce a rational angle into [0, 1).
inline Rational mod_one(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational out = q - Rational(fl);
  out.canonicalize();
  return out;
}

/// One binding character lambda^v = exp(2 pi i theta).
struct Binding {
  IntVector v;
  Rational theta;

  friend bool operator==(const Binding&, const Binding&) = default;
  friend auto operator<=>(const Binding& a, const Binding& b) {
    if (auto c = a.v <=> b.v; c != 0) return c;
    if (a.theta < b.theta) return std::strong_ordering::less;
    if (b.theta < a.theta) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// Coset { lambda in (C*)^r : lambda^v = exp(2 pi i theta) for each binding }.
///
/// Canonical form: the binding vectors are brought to row Hermite normal form
/// (echelon, positive pivots, entries above a pivot reduced into
/// [0, pivot)), with the angles carried through the same unimodular row
/// operations and reduced mod 1. Equal sets have equal canonical forms.
class TorusCoset {
 public:
  TorusCoset(std::size_t r, std::vector<Binding> bindings) : r_(r), rows_(std::move(bindings)) {
    for (const auto& b : rows_)
      if (b.v.size() != r_) throw Error(errc::invalid_argument, "binding vector has the wrong length");
    canonicalize();
  }

  /// The whole torus (no bindings).
  explicit TorusCoset(std::size_t r) : r_(r) {}

  std::size_t ambient_dimension() const noexcept { return r_; }
  const std::vector<Binding>& bindings() const noexcept { return rows_; }
  std::size_t codimension() const noexcept { return rows_.size(); }

  /// A coset of a connected subtorus iff the binding lattice is saturated.
  bool is_connected() const {
    if (rows_.empty()) return true;
    if (rows_.size() == 1) return vector_gcd(rows_.front().v) == 1;
    // Saturated iff the gcd of the maximal minors is 1; only needed for
    // codimension <= 2 here, general case via Smith form is out of scope.
    if (rows_.size() == 2) {
      long g = 0;
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = i + 1; j < r_; ++j)
          g = std::gcd(g, rows_[0].v[i] * rows_[1].v[j] - rows_[0].v[j] * rows_[1].v[i]);
      return g == 1;
    }
    throw Error(errc::unsupported_codim, "connectivity test implemented for codimension <= 2");
  }

  /// For codimension one: split lambda^(d v') = e(theta) into the d connected
  /// cosets lambda^v' = e((theta + j) / d).
  std::vector<TorusCoset> connected_components() const {
    if (codimension() != 1) throw Error(errc::unsupported_codim, "component split needs codimension 1");
    const auto& b = rows_.front();
    const long d = vector_gcd(b.v);
    IntVector prim = b.v;
    for (auto& x : prim) x /= d;
    std::vector<TorusCoset> out;
    for (long j = 0; j < d; ++j) out.emplace_back(r_, std::vector<Binding>{{prim, (b.theta + Rational(j)) / Rational(d)}});
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Angle taken by the character w on this coset, if w lies in the binding
  /// lattice.
  std::optional<Rational> character_value(IntVector w) const {
    Rational theta(0);
    for (const auto& row : rows_) {
      std::size_t pc = 0;
      while (row.v[pc] == 0) ++pc;
      if (w[pc] % row.v[pc] != 0) return std::nullopt;
      const long q = w[pc] / row.v[pc];
      for (std::size_t i = 0; i < r_; ++i) w[i] -= q * row.v[i];
      theta += Rational(q) * row.theta;
    }
    if (std::any_of(w.begin(), w.end(), [](long x) { return x != 0; })) return std::nullopt;
    return mod_one(theta);
  }

  /// inner is a subset of outer.
  friend bool is_subset(const TorusCoset& inner, const TorusCoset& outer) {
    for (const auto& row : outer.rows_) {
      auto value = inner.character_value(row.v);
      if (!value || *value != row.theta) return false;
    }
    return true;
  }

  friend bool operator==(const TorusCoset&, const TorusCoset&) = default;
  friend auto operator<=>(const TorusCoset& a, const TorusCoset& b) {
    if (auto c = a.r_ <=> b.r_; c != 0) return c;
    return a.rows_ <=> b.rows_;
  }

 private:
  static long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  void subtract(std::size_t target, std::size_t source, long q) {
    for (std::size_t i = 0; i < r_; ++i) rows_[target].v[i] -= q * rows_[source].v[i];
    rows_[target].theta -= Rational(q) * rows_[source].theta;
  }

  void canonicalize() {
    std::size_t k = 0;
    for (std::size_t c = 0; c < r_ && k < rows_.size(); ++c) {
      for (;;) {
        std::size_t best = rows_.size();
        for (std::size_t i = k; i < rows_.size(); ++i)
          if (rows_[i].v[c] != 0 && (best == rows_.size() || std::labs(rows_[i].v[c]) < std::labs(rows_[best].v[c])))
            best = i;
        if (best == rows_.size()) break;
        std::swap(rows_[k], rows_[best]);
        bool done = true;
        for (std::size_t i = k + 1; i < rows_.size(); ++i) {
          if (rows_[i].v[c] == 0) continue;
          subtract(i, k, floor_div(rows_[i].v[c], rows_[k].v[c]));
          if (rows_[i].v[c] != 0) done = false;
        }
        if (done) break;
      }
      if (k >= rows_.size() || rows_[k].v[c] == 0) continue;
      if (rows_[k].v[c] < 0) {
        for (auto& x : rows_[k].v) x = -x;
        rows_[k].theta = -rows_[k].theta;
      }
      for (std::size_t i = 0; i < k; ++i) subtract(i, k, floor_div(rows_[i].v[c], rows_[k].v[c]));
      ++k;
    }
    for (std::size_t i = k; i < rows_.size(); ++i)
      if (mod_one(rows_[i].theta) != 0) throw Error(errc::empty_coset, "inconsistent bindings define the empty set");
    rows_.resize(k);
    for (auto& row : rows_) row.theta = mod_one(row.theta);
  }

  std::size_t r_ = 0;
  std::vector<Binding> rows_;
};

/// Exp of the hyperplane L*s + b = 0: for L primitive the image is exactly
/// { lambda^L = exp(-2 pi i b) }.
inline TorusCoset exp_image(const Hyperplane& h) {
  return TorusCoset(h.dimension(), {Binding{h.slope(), mod_one(-h.intercept())}});
}

inline std::vector<TorusCoset> exp_images(std::span<const Hyperplane> hs) {
  std::set<TorusCoset> out;
  for (const auto& h : hs) out.insert(exp_image(h));
  return {out.begin(), out.end()};
}

/// Sorted, deduplicated union of codimension-one cosets written as connected
/// components.
inline std::set<TorusCoset> connected_union(std::span<const TorusCoset> cosets) {
  std::set<TorusCoset> out;
  for (const auto& c : cosets) {
    if (c.codimension() != 1)
      throw Error(errc::unsupported_codim, "union comparison needs codimension-1 cosets");
    for (auto& comp : c.connected_components()) out.insert(std::move(comp));
  }
  return out;
}

/// Set equality of two finite unions of codimension-one cosets. Each coset is
/// split into connected components; components of equal dimension are
/// irreducible, so the unions agree iff the component sets agree.
inline bool union_equal(std::span<const TorusCoset> A, std::span<const TorusCoset> B) {
  return connected_union(A) == connected_union(B);
}

/// Exp(Z(B_F^a)) versus the union over i with a_i != 0 of Exp(Z(B_{F,i})).
/// Keys of per_i are zero-based indices and must be exactly those i.
inline bool check_eq_III(const std::map<std::size_t, std::vector<TorusCoset>>& per_i,
                         std::span<const TorusCoset> combined, std::span<const int> a) {
  std::set<std::size_t> expected;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) expected.insert(i);
  std::set<std::size_t> keys;
  for (const auto& [i, v] : per_i) keys.insert(i);
  if (keys != expected) throw Error(errc::invalid_argument, "per-index images must cover exactly {i : a_i != 0}");
  std::vector<TorusCoset> uni;
  for (const auto& [i, v] : per_i) uni.insert(uni.end(), v.begin(), v.end());
  return union_equal(combined, uni);
}

/// "{l1*l2 = 1}", "{l1 = -1}", "{l1^2*l2^-1 = e(1/3)}" with e(t) = exp(2 pi i t).
inline std::string to_string(const TorusCoset& c) {
  const auto names = parameter_names(c.ambient_dimension(), "l");
  std::string out = "{";
  bool first = true;
  for (const auto& b : c.bindings()) {
    if (!first) out += ", ";
    first = false;
    std::string lhs;
    for (std::size_t i = 0; i < b.v.size(); ++i) {
      if (b.v[i] == 0) continue;
      if (!lhs.empty()) lhs += '*';
      lhs += names[i];
      if (b.v[i] != 1) lhs += '^' + std::to_string(b.v[i]);
    }
    std::string rhs;
    if (b.theta == 0) {
      rhs = "1";
    } else if (b.theta == Rational(1, 2)) {
      rhs = "-1";
    } else {
      rhs = "e(" + rational_to_string(b.theta) + ")";
    }
    out += lhs + " = " + rhs;
  }
  if (first) out += "all";
  return out + "}";
}

}  // namespace bsideal

#endif  // BSIDEAL_TORUS_HPP
