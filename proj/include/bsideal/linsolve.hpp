#ifndef BSIDEAL_LINSOLVE_HPP
#define BSIDEAL_LINSOLVE_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bsideal/polynomial.hpp"

namespace bsideal {

/// Sparse integer row: (column, value) pairs with strictly increasing
/// columns and no zero values.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

namespace detail {

inline Integer row_content(const SparseRow& row) {
  Integer g = 0;
  for (const auto& [c, v] : row) {
    g = gcd(g, v);
    if (g == 1) break;
  }
  return g;
}

inline void make_primitive(SparseRow& row) {
  if (row.empty()) return;
  Integer g = row_content(row);
  if (row.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) v /= g;
}

inline Integer entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? it->second : Integer(0);
}

/// a*x - b*y, merged.
inline SparseRow combine(const Integer& a, const SparseRow& x, const Integer& b, const SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  auto ix = x.begin();
  auto iy = y.begin();
  while (ix != x.end() || iy != y.end()) {
    if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
      out.emplace_back(ix->first, a * ix->second);
      ++ix;
    } else if (ix == x.end() || iy->first < ix->first) {
      out.emplace_back(iy->first, -b * iy->second);
      ++iy;
    } else {
      Integer v = a * ix->second - b * iy->second;
      if (v != 0) out.emplace_back(ix->first, std::move(v));
      ++ix;
      ++iy;
    }
  }
  return out;
}

}  // namespace detail

/// Reduced row echelon form of a homogeneous integer system, computed
/// fraction-free: every elimination step is row_i <- p*row_i - q*row_pivot
/// followed by division by the row content, so no rationals appear until
/// the nullspace is read off.
class IntegerRref {
 public:
  IntegerRref(std::vector<SparseRow> rows, std::size_t ncols) : ncols_(ncols) {
    for (auto& row : rows) {
      detail::make_primitive(row);
      if (!row.empty()) pending_.push_back(std::move(row));
    }
    eliminate();
  }

  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<SparseRow>& rows() const noexcept { return rows_; }

  bool is_pivot(std::size_t col) const { return pivot_row_of_[col].has_value(); }

  /// Free columns in increasing order.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < ncols_; ++c)
      if (!is_pivot(c)) out.push_back(c);
    return out;
  }

  /// Nullspace vector with the given free column set to 1 and every other
  /// free column set to 0.
  std::vector<Rational> nullspace_vector(std::size_t free_col) const {
    std::vector<Rational> x(ncols_, Rational(0));
    x[free_col] = 1;
    for (const auto& row : rows_) {
      const auto& [pc, pv] = row.front();
      Integer v = detail::entry(row, free_col);
      if (v != 0) {
        x[pc] = Rational(-v, pv);
        x[pc].canonicalize();
      }
    }
    return x;
  }

 private:
  void eliminate() {
    pivot_row_of_.assign(ncols_, std::nullopt);
    // Pivot columns are taken left to right; within a column the shortest
    // candidate row (then smallest pivot) is preferred to limit fill-in.
    std::vector<SparseRow> work = std::move(pending_);
    std::sort(work.begin(), work.end(), [](const SparseRow& a, const SparseRow& b) {
      if (a.front().first != b.front().first) return a.front().first < b.front().first;
      return a.size() < b.size();
    });
    std::vector<SparseRow> echelon;
    while (!work.empty()) {
      // Rows with the smallest leading column.
      const std::size_t col = work.front().front().first;
      std::size_t best = 0;
      for (std::size_t i = 1; i < work.size() && work[i].front().first == col; ++i) {
        if (work[i].size() < work[best].size() ||
            (work[i].size() == work[best].size() && abs(work[i].front().second) < abs(work[best].front().second)))
          best = i;
      }
      SparseRow pivot = std::move(work[best]);
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
      std::vector<SparseRow> rest;
      rest.reserve(work.size());
      for (auto& row : work) {
        if (row.front().first == col) {
          const Integer g = gcd(pivot.front().second, row.front().second);
          SparseRow next = detail::combine(pivot.front().second / g, row, row.front().second / g, pivot);
          detail::make_primitive(next);
          if (!next.empty()) rest.push_back(std::move(next));
        } else {
          rest.push_back(std::move(row));
        }
      }
      std::sort(rest.begin(), rest.end(), [](const SparseRow& a, const SparseRow& b) {
        if (a.front().first != b.front().first) return a.front().first < b.front().first;
        return a.size() < b.size();
      });
      work = std::move(rest);
      echelon.push_back(std::move(pivot));
    }
    // Back substitution, bottom up, clears entries above each pivot.
    for (std::size_t k = echelon.size(); k-- > 0;) {
      const std::size_t col = echelon[k].front().first;
      const Integer& pv = echelon[k].front().second;
      for (std::size_t i = 0; i < k; ++i) {
        Integer v = detail::entry(echelon[i], col);
        if (v == 0) continue;
        const Integer g = gcd(pv, v);
        echelon[i] = detail::combine(pv / g, echelon[i], v / g, echelon[k]);
        detail::make_primitive(echelon[i]);
      }
    }
    rows_ = std::move(echelon);
    for (std::size_t i = 0; i < rows_.size(); ++i) pivot_row_of_[rows_[i].front().first] = i;
  }

  std::size_t ncols_;
  std::vector<SparseRow> pending_;
  std::vector<SparseRow> rows_;
  std::vector<std::optional<std::size_t>> pivot_row_of_;
};

}  // namespace bsideal

#endif  // BSIDEAL_LINSOLVE_HPP
