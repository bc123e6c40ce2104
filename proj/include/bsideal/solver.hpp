#ifndef BSIDEAL_SOLVER_HPP
#define BSIDEAL_SOLVER_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bsideal/germ.hpp"
#include "bsideal/linsolve.hpp"
#include "bsideal/polynomial.hpp"
#include "bsideal/weyl.hpp"

namespace bsideal {

/// Truncation of the ansatz P = sum c_{sigma,alpha,beta} s^sigma x^alpha d^beta,
/// b = sum d_tau s^tau.
struct SolveBounds {
  int max_operator_order = 1;
  int max_x_degree = 0;
  int max_s_degree = 0;
  int max_b_degree = 2;
  /// Refuse to build systems with more cells (rows x columns) than this;
  /// 0 means unlimited.
  std::size_t max_matrix_cells = 0;
};

/// Witness (b, P) of b * f^s = P * f^(s+a).
struct BSCertificate {
  ParamPoly b;
  WeylOperator P;
  std::shared_ptr<const Collection> F;
  std::vector<int> a;
};

/// Thrown when the truncated system is larger than the configured cap.
class MemoryCapExceeded : public Error {
 public:
  explicit MemoryCapExceeded(const std::string& msg) : Error(errc::no_solution, msg) {}
};

/// Exact check of the functional equation after clearing denominators.
inline bool verify(const BSCertificate& cert) {
  const auto& ctx = cert.F;
  if (cert.a.size() != ctx->r() || cert.b.nvars() != ctx->r()) return false;
  if (cert.P.n() != ctx->n() || cert.P.r() != ctx->r()) return false;
  GermElement lhs = apply(cert.P, GermElement::power(ctx, cert.a));
  std::vector<int> zero(ctx->r(), 0);
  GermElement rhs = GermElement::power(ctx, zero).times_param(cert.b);
  return lhs == rhs;
}

namespace detail {

inline void check_problem(const Collection& F, std::span<const int> a) {
  if (a.size() != F.r()) throw Error(errc::invalid_argument, "exponent vector a has the wrong length");
  bool invertible = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) throw Error(errc::invalid_argument, "exponent vector a must be non-negative");
    if (a[i] > 0 && !F.polys()[i].is_constant()) invertible = false;
  }
  if (invertible) throw Error(errc::invertible, "f^a is a nonzero constant");
}

}  // namespace detail

/// Which d-monomials the ansatz may use.
struct OperatorSupport {
  std::string name;
  std::vector<Exponents> betas;
};

/// Solve for (b, P) over the given d-monomials. Among all b in the solution
/// space the one with the smallest leading monomial (graded lex) is
/// returned, scaled monic; P is the particular solution with all free
/// operator coefficients set to zero.
inline std::optional<BSCertificate> find_bs_pair_with_support(std::shared_ptr<const Collection> F,
                                                               std::span<const int> a, const SolveBounds& bounds,
                                                               std::span<const Exponents> betas) {
  detail::check_problem(*F, a);
  const std::size_t n = F->n();
  const std::size_t r = F->r();
  const std::size_t nv = n + r;

  const auto alphas = monomials_up_to(n, bounds.max_x_degree);
  const auto sigmas = monomials_up_to(r, bounds.max_s_degree);
  const auto taus = monomials_up_to(r, bounds.max_b_degree);

  DerivativeTable table(GermElement::power(F, a));
  std::vector<int> e(r, 0);
  for (const auto& beta : betas) {
    auto eff = table.get(beta).effective_exponent();
    for (std::size_t i = 0; i < r; ++i) e[i] = std::min(e[i], eff[i]);
  }

  // Column layout: operator coefficients first, then b coefficients with
  // the smallest monomial first.
  struct OpColumn {
    std::size_t sigma, alpha, beta;
  };
  std::vector<OpColumn> op_cols;
  for (std::size_t ib = 0; ib < betas.size(); ++ib)
    for (std::size_t ia = 0; ia < alphas.size(); ++ia)
      for (std::size_t is = 0; is < sigmas.size(); ++is) op_cols.push_back({is, ia, ib});
  const std::size_t ncols = op_cols.size() + taus.size();

  std::map<Exponents, std::vector<std::pair<std::size_t, Rational>>, GradedLexGreater> equations;
  auto scatter = [&](std::size_t col, const Polynomial& p) {
    for (const auto& [mono, c] : p.terms()) equations[mono].emplace_back(col, c);
  };

  std::vector<Polynomial> cleared(betas.size());
  for (std::size_t ib = 0; ib < betas.size(); ++ib) cleared[ib] = table.get(betas[ib]).numerator_over(e);
  for (std::size_t col = 0; col < op_cols.size(); ++col) {
    const auto& oc = op_cols[col];
    Exponents shift(nv, 0);
    std::copy(alphas[oc.alpha].begin(), alphas[oc.alpha].end(), shift.begin());
    std::copy(sigmas[oc.sigma].begin(), sigmas[oc.sigma].end(), shift.begin() + static_cast<std::ptrdiff_t>(n));
    scatter(col, cleared[oc.beta].times_monomial(shift));
  }
  // b * f^s = b * f^(-e) * f^(s+e).
  std::vector<int> neg_e(r);
  for (std::size_t i = 0; i < r; ++i) neg_e[i] = -e[i];
  const Polynomial rhs = F->lifted_product(neg_e);
  for (std::size_t it = 0; it < taus.size(); ++it) {
    Exponents shift(nv, 0);
    std::copy(taus[it].begin(), taus[it].end(), shift.begin() + static_cast<std::ptrdiff_t>(n));
    scatter(op_cols.size() + it, rhs.times_monomial(shift, Rational(-1)));
  }

  if (bounds.max_matrix_cells > 0 && equations.size() * ncols > bounds.max_matrix_cells)
    throw MemoryCapExceeded("linear system of " + std::to_string(equations.size()) + "x" +
                            std::to_string(ncols) + " exceeds the configured cap");

  std::vector<SparseRow> rows;
  rows.reserve(equations.size());
  for (auto& [mono, entries] : equations) {
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Integer den = 1;
    for (const auto& [c, v] : entries) den = lcm(den, Integer(v.get_den()));
    SparseRow row;
    for (const auto& [c, v] : entries) {
      Integer iv = v.get_num() * (den / v.get_den());
      if (!row.empty() && row.back().first == c) {
        row.back().second += iv;
        if (row.back().second == 0) row.pop_back();
      } else if (iv != 0) {
        row.emplace_back(c, std::move(iv));
      }
    }
    rows.push_back(std::move(row));
  }

  IntegerRref rref(std::move(rows), ncols);
  std::optional<std::size_t> chosen;
  for (std::size_t c = op_cols.size(); c < ncols; ++c) {
    if (!rref.is_pivot(c)) {
      chosen = c;
      break;
    }
  }
  if (!chosen) return std::nullopt;

  const auto x = rref.nullspace_vector(*chosen);
  ParamPoly b(r);
  for (std::size_t it = 0; it < taus.size(); ++it) b.add_term(taus[it], x[op_cols.size() + it]);
  WeylOperator P(n, r);
  for (std::size_t col = 0; col < op_cols.size(); ++col) {
    if (x[col] == 0) continue;
    const auto& oc = op_cols[col];
    P.add_term(WeylMonomial{alphas[oc.alpha], betas[oc.beta]}, Polynomial::monomial(sigmas[oc.sigma], x[col]));
  }
  return BSCertificate{std::move(b), std::move(P), std::move(F), std::vector<int>(a.begin(), a.end())};
}

/// All d-monomials of total degree <= order.
inline std::vector<Exponents> full_support(std::size_t n, int order) { return monomials_up_to(n, order); }

/// Bounded search for a certified element of B_F^a; nullopt signals that the
/// bounds are too small, not that no element exists.
inline std::optional<BSCertificate> find_bs_pair(std::shared_ptr<const Collection> F, std::span<const int> a,
                                                 const SolveBounds& bounds) {
  const auto betas = full_support(F->n(), bounds.max_operator_order);
  return find_bs_pair_with_support(std::move(F), a, bounds, betas);
}

/// Fixed, reproducible list of operator supports used by sample_ideal:
///   "full"          every d^beta with |beta| <= order
///   "axis:j"        powers of a single d_j (one entry per variable)
///   "homogeneous:k" every d^beta with |beta| == k, for k = 1..order
inline std::vector<OperatorSupport> sampling_strategies(std::size_t n, int order) {
  std::vector<OperatorSupport> out;
  const auto all = full_support(n, order);
  out.push_back({"full", all});
  for (std::size_t j = 0; j < n; ++j) {
    OperatorSupport s{"axis:" + std::to_string(j + 1), {}};
    for (const auto& beta : all)
      if (total_degree(beta) == beta[j]) s.betas.push_back(beta);
    out.push_back(std::move(s));
  }
  for (int k = 1; k <= order; ++k) {
    OperatorSupport s{"homogeneous:" + std::to_string(k), {}};
    for (const auto& beta : all)
      if (total_degree(beta) == k) s.betas.push_back(beta);
    out.push_back(std::move(s));
  }
  return out;
}

/// One certificate per distinct b found by the strategies, sorted by b.
/// The b's generate a sub-ideal of B_F^a; completeness is not claimed.
inline std::vector<BSCertificate> sample_ideal_certificates(std::shared_ptr<const Collection> F,
                                                            std::span<const int> a, const SolveBounds& bounds,
                                                            std::span<const OperatorSupport> strategies) {
  detail::check_problem(*F, a);
  std::map<ParamPoly, BSCertificate> found;
  for (const auto& strategy : strategies) {
    auto cert = find_bs_pair_with_support(F, a, bounds, strategy.betas);
    if (!cert) continue;
    ParamPoly key = cert->b.monic();
    found.try_emplace(std::move(key), std::move(*cert));
  }
  if (found.empty()) throw Error(errc::no_solution, "no strategy found an element within the bounds");
  std::vector<BSCertificate> out;
  for (auto& [k, c] : found) out.push_back(std::move(c));
  return out;
}

inline std::vector<ParamPoly> sample_ideal(std::shared_ptr<const Collection> F, std::span<const int> a,
                                           const SolveBounds& bounds, std::span<const OperatorSupport> strategies) {
  std::vector<ParamPoly> out;
  for (auto& c : sample_ideal_certificates(std::move(F), a, bounds, strategies)) out.push_back(c.b);
  return out;
}

inline std::vector<ParamPoly> sample_ideal(std::shared_ptr<const Collection> F, std::span<const int> a,
                                           const SolveBounds& bounds) {
  const auto strategies = sampling_strategies(F->n(), bounds.max_operator_order);
  return sample_ideal(std::move(F), a, bounds, strategies);
}

/// Shift a certificate: (b(s+k), P(s+k)) certifies the same equation with s
/// replaced by s+k.
inline BSCertificate shift_certificate(const BSCertificate& cert, std::span<const long> k) {
  WeylOperator P(cert.P.n(), cert.P.r());
  for (const auto& [m, c] : cert.P.terms()) P.add_term(m, shift_s(c, k));
  return BSCertificate{shift_s(cert.b, k), std::move(P), cert.F, cert.a};
}

/// Check b(s) f^(s+k) = P(s) f^(s+k+a) for an integer twist k; with a
/// shifted certificate this is the original identity after s -> s+k.
inline bool verify_twisted(const BSCertificate& cert, std::span<const long> k) {
  const auto& ctx = cert.F;
  std::vector<int> base(k.begin(), k.end());
  std::vector<int> raised = base;
  for (std::size_t i = 0; i < raised.size(); ++i) raised[i] += cert.a[i];
  GermElement lhs = apply(cert.P, GermElement::power(ctx, raised));
  GermElement rhs = GermElement::power(ctx, base).times_param(cert.b);
  return lhs == rhs;
}

}  // namespace bsideal

#endif  // BSIDEAL_SOLVER_HPP
