#ifndef BSIDEAL_SNC_HPP
#define BSIDEAL_SNC_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bsideal/ideal_geometry.hpp"
#include "bsideal/solver.hpp"
#include "bsideal/torus.hpp"

namespace bsideal {

/// One divisor E_k of a normal-crossing model: multiplicities L_k of each f_j
/// along E_k and the Euler characteristic of the open stratum.
struct ResolutionComponent {
  IntVector L;
  long chi = 0;
  std::set<std::size_t> maps_into;  // { i : l_{i,k} > 0 }, zero-based
};

class ResolutionGraph {
 public:
  ResolutionGraph(std::size_t r, std::vector<ResolutionComponent> comps) : r_(r), comps_(std::move(comps)) {
    if (r_ == 0) throw Error(errc::invalid_argument, "resolution graph needs r >= 1");
    for (auto& c : comps_) {
      if (c.L.size() != r_) throw Error(errc::invalid_argument, "component multiplicity vector has the wrong length");
      std::set<std::size_t> derived;
      for (std::size_t i = 0; i < r_; ++i) {
        if (c.L[i] < 0) throw Error(errc::invalid_argument, "multiplicities must be non-negative");
        if (c.L[i] > 0) derived.insert(i);
      }
      if (derived.empty()) throw Error(errc::invalid_argument, "component with zero multiplicity vector");
      if (!c.maps_into.empty() && c.maps_into != derived)
        throw Error(errc::invalid_argument, "maps_into disagrees with the multiplicities");
      c.maps_into = std::move(derived);
    }
  }

  static ResolutionGraph from_multiplicities(std::size_t r, const std::vector<std::pair<IntVector, long>>& comps) {
    std::vector<ResolutionComponent> out;
    for (const auto& [L, chi] : comps) out.push_back({L, chi, {}});
    return ResolutionGraph(r, std::move(out));
  }

  std::size_t r() const noexcept { return r_; }
  const std::vector<ResolutionComponent>& components() const noexcept { return comps_; }

  /// Same components with L_k replaced by the scalar L_k . m.
  ResolutionGraph reweighted(std::span<const long> m) const {
    std::vector<ResolutionComponent> out;
    for (const auto& c : comps_) out.push_back({IntVector{dot(c.L, m)}, c.chi, {}});
    return ResolutionGraph(1, std::move(out));
  }

 private:
  std::size_t r_;
  std::vector<ResolutionComponent> comps_;
};

/// Canonically sorted set of primitive slopes.
class SlopeSet {
 public:
  SlopeSet() = default;
  template <class It>
  SlopeSet(It first, It last) {
    for (; first != last; ++first) insert(*first);
  }
  SlopeSet(std::initializer_list<IntVector> init) : SlopeSet(init.begin(), init.end()) {}

  void insert(const IntVector& v) { slopes_.insert(primitive_vector(v)); }
  bool contains(const IntVector& v) const { return slopes_.count(v) > 0; }
  bool empty() const noexcept { return slopes_.empty(); }
  std::size_t size() const noexcept { return slopes_.size(); }
  auto begin() const { return slopes_.begin(); }
  auto end() const { return slopes_.end(); }

  bool is_subset_of(const SlopeSet& o) const {
    return std::includes(o.slopes_.begin(), o.slopes_.end(), slopes_.begin(), slopes_.end());
  }

  friend bool operator==(const SlopeSet&, const SlopeSet&) = default;

 private:
  std::set<IntVector> slopes_;
};

namespace detail {
inline void check_a(const ResolutionGraph& g, std::span<const int> a) {
  if (a.size() != g.r()) throw Error(errc::invalid_argument, "exponent vector a has the wrong length");
  for (int x : a)
    if (x < 0) throw Error(errc::invalid_argument, "exponent vector a must be non-negative");
}
}  // namespace detail

/// K = union over j with a_j != 0 of { k : l_{j,k} > 0 }, zero-based.
inline std::vector<std::size_t> support_K(const ResolutionGraph& g, std::span<const int> a) {
  detail::check_a(g, a);
  std::vector<std::size_t> K;
  for (std::size_t k = 0; k < g.components().size(); ++k) {
    const auto& L = g.components()[k].L;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] != 0 && L[j] > 0) {
        K.push_back(k);
        break;
      }
    }
  }
  if (K.empty()) throw Error(errc::empty_k, "no component carries an f_j with a_j != 0");
  return K;
}

inline SlopeSet slope_set(const ResolutionGraph& g, std::span<const int> a) {
  SlopeSet out;
  for (std::size_t k : support_K(g, a)) out.insert(g.components()[k].L);
  return out;
}

/// prod_{k in K} prod_{j=1}^{L_k . a} (L_k . s + j).
inline ParamPoly snc_b_element(const ResolutionGraph& g, std::span<const int> a) {
  const std::size_t r = g.r();
  ParamPoly b = ParamPoly::constant(r, 1);
  const IntVector av(a.begin(), a.end());
  for (std::size_t k : support_K(g, a)) {
    const auto& L = g.components()[k].L;
    const long La = dot(L, av);
    for (long j = 1; j <= La; ++j) {
      ParamPoly factor = ParamPoly::constant(r, Rational(j));
      for (std::size_t i = 0; i < r; ++i) factor.add_term(unit_exponent(r, i), Rational(L[i]));
      b *= factor;
    }
  }
  return b;
}

/// Exponent matrix of a pure monomial collection: exponents[j][k] is the
/// power of y_k in f_j.
using ExponentMatrix = std::vector<std::vector<int>>;

inline std::shared_ptr<const Collection> monomial_collection(const ExponentMatrix& exponents) {
  if (exponents.empty()) throw Error(errc::invalid_argument, "empty exponent matrix");
  const std::size_t n = exponents.front().size();
  std::vector<Polynomial> f;
  for (const auto& row : exponents) {
    if (row.size() != n) throw Error(errc::invalid_argument, "ragged exponent matrix");
    for (int e : row)
      if (e < 0) throw Error(errc::invalid_argument, "negative exponent in monomial collection");
    f.push_back(Polynomial::monomial(Exponents(row.begin(), row.end())));
  }
  return std::make_shared<const Collection>(n, std::move(f));
}

/// Local graph at the origin of a monomial collection: one component per
/// coordinate hyperplane y_k = 0 that divides some f_j. Its open stratum
/// near the origin has Euler characteristic 1 when it is the only divisor
/// and 0 otherwise.
inline ResolutionGraph monomial_graph(const ExponentMatrix& exponents) {
  const std::size_t r = exponents.size();
  const std::size_t n = exponents.front().size();
  std::vector<IntVector> columns;
  for (std::size_t k = 0; k < n; ++k) {
    IntVector L(r);
    for (std::size_t j = 0; j < r; ++j) L[j] = exponents[j][k];
    if (std::any_of(L.begin(), L.end(), [](long x) { return x != 0; })) columns.push_back(std::move(L));
  }
  std::vector<ResolutionComponent> comps;
  for (auto& L : columns) comps.push_back({std::move(L), columns.size() == 1 ? 1L : 0L, {}});
  return ResolutionGraph(r, std::move(comps));
}

/// Explicit certificate for a monomial collection: b = snc_b_element and
/// P = prod_k d_{y_k}^{L_k . a}.
inline BSCertificate snc_certificate(const ExponentMatrix& exponents, std::span<const int> a) {
  auto F = monomial_collection(exponents);
  const ResolutionGraph g = monomial_graph(exponents);
  const std::size_t n = F->n();
  const std::size_t r = F->r();
  if (a.size() != r) throw Error(errc::invalid_argument, "exponent vector a has the wrong length");
  Exponents beta(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < r; ++j) beta[k] += exponents[j][k] * a[j];
  WeylOperator P = WeylOperator::monomial(WeylMonomial{Exponents(n, 0), beta}, ParamPoly::constant(r, 1));
  return BSCertificate{snc_b_element(g, a), std::move(P), std::move(F), std::vector<int>(a.begin(), a.end())};
}

/// slopes_F is contained in slope_set(graph_G, a); trivially true when empty.
inline bool pullback_slope_check(const SlopeSet& slopes_F, const ResolutionGraph& graph_G, std::span<const int> a) {
  if (slopes_F.empty()) return true;
  return slopes_F.is_subset_of(slope_set(graph_G, a));
}

/// prod_v (1 - t^v)^{e_v}; zero exponents are never stored.
class MonZeta {
 public:
  explicit MonZeta(std::size_t r) : r_(r) {}

  std::size_t r() const noexcept { return r_; }
  const std::map<IntVector, long>& exponents() const noexcept { return exps_; }

  void multiply_factor(const IntVector& v, long e) {
    if (v.size() != r_) throw Error(errc::invalid_argument, "zeta factor has the wrong length");
    if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }))
      throw Error(errc::invalid_argument, "zeta factor vector must be nonzero");
    if (e == 0) return;
    long& slot = exps_[v];
    slot += e;
    if (slot == 0) exps_.erase(v);
  }

  friend MonZeta operator*(MonZeta a, const MonZeta& b) {
    for (const auto& [v, e] : b.exps_) a.multiply_factor(v, e);
    return a;
  }
  friend bool operator==(const MonZeta&, const MonZeta&) = default;

 private:
  std::size_t r_;
  std::map<IntVector, long> exps_;
};

inline MonZeta mon_zeta(const ResolutionGraph& g) {
  MonZeta z(g.r());
  for (const auto& c : g.components()) z.multiply_factor(c.L, c.chi);
  return z;
}

/// t_i -> t^{m_i}: factor t^v becomes t^{v . m}; colliding exponents add.
inline MonZeta sabbah_specialize(const MonZeta& z, std::span<const long> m) {
  if (m.size() != z.r()) throw Error(errc::invalid_argument, "specialization vector has the wrong length");
  for (long x : m)
    if (x <= 0) throw Error(errc::invalid_argument, "specialization weights must be positive");
  MonZeta out(1);
  for (const auto& [v, e] : z.exponents()) out.multiply_factor(IntVector{dot(v, m)}, e);
  return out;
}

inline std::string to_string(const MonZeta& z) {
  if (z.exponents().empty()) return "1";
  const auto names = parameter_names(z.r(), "t");
  std::string out;
  for (const auto& [v, e] : z.exponents()) {
    if (!out.empty()) out += " * ";
    std::string mono;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[i];
      if (v[i] != 1) mono += '^' + std::to_string(v[i]);
    }
    out += "(1 - " + mono + ")";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

/// Combinatorial support locus: union over i with a_i != 0 of the cosets
/// lambda^{L_k} = 1 for components k lying over D_i, split into connected
/// components, sorted and deduplicated.
inline std::vector<TorusCoset> support_loci(const ResolutionGraph& g, std::span<const int> a) {
  detail::check_a(g, a);
  std::set<TorusCoset> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (const auto& c : g.components()) {
      if (!c.maps_into.count(i)) continue;
      TorusCoset coset(g.r(), {Binding{c.L, Rational(0)}});
      for (auto& comp : coset.connected_components()) out.insert(std::move(comp));
    }
  }
  if (out.empty()) throw Error(errc::empty_k, "no component lies over any D_i with a_i != 0");
  return {out.begin(), out.end()};
}

}  // namespace bsideal

#endif  // BSIDEAL_SNC_HPP
