#ifndef BSIDEAL_GERM_HPP
#define BSIDEAL_GERM_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bsideal/polynomial.hpp"
#include "bsideal/weyl.hpp"

namespace bsideal {

/// The collection F = (f_1..f_r) of nonzero polynomials in x_1..x_n, with
/// each f_i and its partial derivatives pre-lifted into Q[x, s].
class Collection {
 public:
  Collection(std::size_t n, std::vector<Polynomial> f) : n_(n), f_(std::move(f)) {
    if (f_.empty()) throw Error(errc::invalid_argument, "empty polynomial collection");
    const std::size_t r = f_.size();
    for (const auto& fi : f_) {
      if (fi.nvars() != n) throw Error(errc::invalid_argument, "polynomial has wrong variable count");
      if (fi.is_zero()) throw Error(errc::invalid_argument, "collection contains the zero polynomial");
      lifted_.push_back(fi.embed(n + r, 0));
      std::vector<Polynomial> d;
      for (std::size_t j = 0; j < n; ++j) d.push_back(lifted_.back().derivative(j));
      lifted_partials_.push_back(std::move(d));
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return f_.size(); }
  const std::vector<Polynomial>& polys() const noexcept { return f_; }
  const Polynomial& lifted(std::size_t i) const { return lifted_[i]; }
  const Polynomial& lifted_partial(std::size_t i, std::size_t j) const { return lifted_partials_[i][j]; }

  /// f_i^k lifted into Q[x, s], memoized.
  const Polynomial& lifted_power(std::size_t i, int k) const {
    auto& cache = power_cache_[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(n_ + r(), 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * lifted_[i]);
    return cache[static_cast<std::size_t>(k)];
  }

  /// prod_i f_i^{e_i} lifted; every e_i must be >= 0.
  Polynomial lifted_product(std::span<const int> e) const {
    Polynomial p = Polynomial::constant(n_ + r(), 1);
    for (std::size_t i = 0; i < r(); ++i) {
      assert(e[i] >= 0);
      if (e[i] > 0) p *= lifted_power(i, e[i]);
    }
    return p;
  }

  friend bool operator==(const Collection& a, const Collection& b) { return a.n_ == b.n_ && a.f_ == b.f_; }

 private:
  std::size_t n_;
  std::vector<Polynomial> f_;
  std::vector<Polynomial> lifted_;
  std::vector<std::vector<Polynomial>> lifted_partials_;
  mutable std::map<std::size_t, std::vector<Polynomial>> power_cache_;
};

/// g / (f_1^m_1 ... f_r^m_r) * f^(s+a), with g in Q[x, s].
///
/// Only the effective exponent a - m matters for equality; the split into
/// denominator and twist is kept so reduce() can cancel per factor.
class GermElement {
 public:
  GermElement(std::shared_ptr<const Collection> ctx, Polynomial numerator, std::vector<int> denom,
              std::vector<int> twist)
      : ctx_(std::move(ctx)), num_(std::move(numerator)), denom_(std::move(denom)), twist_(std::move(twist)) {
    assert(ctx_ && num_.nvars() == ctx_->n() + ctx_->r());
    assert(denom_.size() == ctx_->r() && twist_.size() == ctx_->r());
  }

  /// The symbol f^(s+a) itself.
  static GermElement power(std::shared_ptr<const Collection> ctx, std::span<const int> a) {
    const std::size_t nv = ctx->n() + ctx->r();
    const std::size_t r = ctx->r();
    return GermElement(std::move(ctx), Polynomial::constant(nv, 1), std::vector<int>(r, 0),
                       std::vector<int>(a.begin(), a.end()));
  }

  const std::shared_ptr<const Collection>& context() const noexcept { return ctx_; }
  const Polynomial& numerator() const noexcept { return num_; }
  const std::vector<int>& denominator() const noexcept { return denom_; }
  const std::vector<int>& twist() const noexcept { return twist_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// Cancel f_i factors shared by numerator and denominator.
  GermElement reduce() const {
    GermElement out = *this;
    if (out.num_.is_zero()) {
      std::fill(out.denom_.begin(), out.denom_.end(), 0);
      return out;
    }
    for (std::size_t i = 0; i < ctx_->r(); ++i) {
      while (out.denom_[i] > 0) {
        auto q = out.num_.divide_exact(ctx_->lifted(i));
        if (!q) break;
        out.num_ = std::move(*q);
        --out.denom_[i];
      }
    }
    return out;
  }

  GermElement times(const Polynomial& c) const {
    return GermElement(ctx_, num_ * c, denom_, twist_);
  }

  /// Multiply by a coefficient c(s).
  GermElement times_param(const ParamPoly& c) const { return times(c.embed(num_.nvars(), ctx_->n())); }

  GermElement times_x(const Exponents& alpha) const {
    Exponents e(num_.nvars(), 0);
    std::copy(alpha.begin(), alpha.end(), e.begin());
    return GermElement(ctx_, num_.times_monomial(e), denom_, twist_);
  }

  /// d/dx_j, using d_j(f^(s+a-m)) = sum_i (s_i + a_i - m_i) (d_j f_i / f_i) f^(s+a-m).
  GermElement derivative(std::size_t j) const {
    const std::size_t n = ctx_->n();
    const std::size_t r = ctx_->r();
    const std::size_t nv = n + r;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < r; ++i)
      if (!ctx_->lifted_partial(i, j).is_zero()) active.push_back(i);

    Polynomial all = Polynomial::constant(nv, 1);
    for (std::size_t i : active) all *= ctx_->lifted(i);
    Polynomial next = num_.derivative(j) * all;
    for (std::size_t i : active) {
      Polynomial others = Polynomial::constant(nv, 1);
      for (std::size_t k : active)
        if (k != i) others *= ctx_->lifted(k);
      Polynomial exponent = Polynomial::variable(nv, n + i) + Polynomial::constant(nv, twist_[i] - denom_[i]);
      next += num_ * exponent * ctx_->lifted_partial(i, j) * others;
    }
    std::vector<int> m = denom_;
    for (std::size_t i : active) ++m[i];
    return GermElement(ctx_, std::move(next), std::move(m), twist_).reduce();
  }

  /// Rewrite with a smaller effective exponent e <= a - m, i.e. as
  /// G * f^(s + e); returns G.
  Polynomial numerator_over(std::span<const int> e) const {
    std::vector<int> extra(ctx_->r());
    for (std::size_t i = 0; i < extra.size(); ++i) {
      extra[i] = twist_[i] - denom_[i] - e[i];
      if (extra[i] < 0) throw Error(errc::invalid_argument, "target exponent exceeds element exponent");
    }
    return num_ * ctx_->lifted_product(extra);
  }

  std::vector<int> effective_exponent() const {
    std::vector<int> e(twist_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = twist_[i] - denom_[i];
    return e;
  }

  friend GermElement operator+(const GermElement& a, const GermElement& b) { return combine(a, b, 1); }
  friend GermElement operator-(const GermElement& a, const GermElement& b) { return combine(a, b, -1); }

  /// Equal iff the cross-multiplied numerators agree over the common
  /// effective exponent.
  friend bool operator==(const GermElement& a, const GermElement& b) {
    check_context(a, b);
    auto e = common_exponent(a, b);
    return a.numerator_over(e) == b.numerator_over(e);
  }

 private:
  static void check_context(const GermElement& a, const GermElement& b) {
    if (a.ctx_ != b.ctx_ && !(*a.ctx_ == *b.ctx_))
      throw Error(errc::invalid_argument, "germ elements over different collections");
  }

  static std::vector<int> common_exponent(const GermElement& a, const GermElement& b) {
    auto ea = a.effective_exponent();
    auto eb = b.effective_exponent();
    for (std::size_t i = 0; i < ea.size(); ++i) ea[i] = std::min(ea[i], eb[i]);
    return ea;
  }

  static GermElement combine(const GermElement& a, const GermElement& b, int sign) {
    check_context(a, b);
    auto e = common_exponent(a, b);
    std::vector<int> twist(e.size()), denom(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      twist[i] = std::min(a.twist_[i], b.twist_[i]);
      denom[i] = twist[i] - e[i];
    }
    Polynomial g = a.numerator_over(e);
    if (sign > 0) {
      g += b.numerator_over(e);
    } else {
      g -= b.numerator_over(e);
    }
    return GermElement(a.ctx_, std::move(g), std::move(denom), std::move(twist)).reduce();
  }

  std::shared_ptr<const Collection> ctx_;
  Polynomial num_;
  std::vector<int> denom_;
  std::vector<int> twist_;
};

/// d^beta applied to a germ, memoized over beta so that a whole family of
/// operators can share intermediate derivatives.
class DerivativeTable {
 public:
  explicit DerivativeTable(GermElement base) : base_(std::move(base)) {}

  const GermElement& get(const Exponents& beta) {
    auto it = table_.find(beta);
    if (it != table_.end()) return it->second;
    std::size_t j = 0;
    while (j < beta.size() && beta[j] == 0) ++j;
    if (j == beta.size()) return table_.emplace(beta, base_).first->second;
    Exponents lower = beta;
    --lower[j];
    GermElement next = get(lower).derivative(j);
    return table_.emplace(beta, std::move(next)).first->second;
  }

 private:
  GermElement base_;
  std::map<Exponents, GermElement> table_;
};

/// Apply P to a germ: each term c(s) x^alpha d^beta acts by differentiating,
/// then multiplying by x^alpha and c(s).
inline GermElement apply(const WeylOperator& P, const GermElement& target) {
  const auto& ctx = target.context();
  if (P.n() != ctx->n() || P.r() != ctx->r())
    throw Error(errc::invalid_argument, "operator does not match the collection's variables");
  DerivativeTable table(target);
  GermElement sum(ctx, Polynomial(ctx->n() + ctx->r()), target.denominator(), target.twist());
  for (const auto& [m, c] : P.terms()) sum = sum + table.get(m.beta).times_x(m.alpha).times_param(c);
  return sum.reduce();
}

}  // namespace bsideal

#endif  // BSIDEAL_GERM_HPP
