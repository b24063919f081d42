#pragma once

// Smith and Hermite normal forms over the integers, integer linear systems,
// and sublattices cut out by congruences.

#include "eqhom/int_matrix.hpp"

#include <optional>
#include <utility>

namespace eqhom {

/// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix U_inv;
  IntMatrix V;
  IntVector diagonal;  // length min(rows, cols); trailing zeros past rank
  std::size_t rank = 0;
};

namespace detail {

inline auto find_min_pivot(const IntMatrix& a, std::size_t t)
    -> std::optional<std::pair<std::size_t, std::size_t>> {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  const Integer* best_val = nullptr;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& v = a(i, j);
      if (v == 0) continue;
      if (!best_val || abs_cmp(v, *best_val) < 0) {
        best = {i, j};
        best_val = &v;
        if (is_unit(v)) return best;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form by smallest-absolute-value pivoting followed by a
/// divisibility fix-up pass on the diagonal.
inline auto smith_normal_form(IntMatrix a, bool with_transforms = true)
    -> SmithForm {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm out;
  if (with_transforms) {
    out.U = IntMatrix::identity(m);
    out.U_inv = IntMatrix::identity(m);
    out.V = IntMatrix::identity(n);
  }
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    a.swap_rows(x, y);
    if (with_transforms) {
      out.U.swap_rows(x, y);
      out.U_inv.swap_cols(x, y);
    }
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    a.swap_cols(x, y);
    if (with_transforms) out.V.swap_cols(x, y);
  };

  std::size_t t = 0;
  const std::size_t lim = std::min(m, n);
  Integer q;
  for (; t < lim; ++t) {
    auto piv = detail::find_min_pivot(a, t);
    if (!piv) break;
    swap_rows(t, piv->first);
    swap_cols(t, piv->second);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        q = floor_div(a(i, t), a(t, t));
        a.row_submul(i, q, t, t);
        if (with_transforms) {
          out.U.row_submul(i, q, t);
          out.U_inv.col_submul(t, -q, i);
        }
        if (a(i, t) != 0) clean = false;
      }
      if (!clean) {
        std::size_t best = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (a(i, t) != 0 && abs_cmp(a(i, t), a(best, t)) < 0) best = i;
        swap_rows(t, best);
        continue;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        q = floor_div(a(t, j), a(t, t));
        a.col_submul(j, q, t, t);
        if (with_transforms) out.V.col_submul(j, q, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t best = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(t, j) != 0 && abs_cmp(a(t, j), a(t, best)) < 0) best = j;
        swap_cols(t, best);
        continue;
      }
      break;
    }
    if (a(t, t) < 0) {
      a(t, t) = -a(t, t);
      if (with_transforms) {
        out.U.negate_row(t);
        out.U_inv.negate_col(t);
      }
    }
  }
  out.rank = t;

  // Divisibility fix-up: (d_i, d_j) -> (gcd, lcm) by a 2x2 unimodular move.
  for (std::size_t i = 0; i < out.rank; ++i)
    for (std::size_t j = i + 1; j < out.rank; ++j) {
      const Integer da = a(i, i), db = a(j, j);
      if (divides(da, db)) continue;
      auto [g, s, tt] = gcdext(da, db);
      Integer ag = da / g, bg = db / g;
      a(i, i) = g;
      a(j, j) = da / g * db;
      if (with_transforms) {
        out.U.combine_rows(i, j, s, tt, -bg, ag);
        out.U_inv.combine_cols(i, j, ag, bg, -tt, s);
        out.V.combine_cols(i, j, 1, 1, -tt * bg, s * ag);
      }
    }

  out.diagonal.resize(lim);
  for (std::size_t i = 0; i < lim; ++i) out.diagonal[i] = a(i, i);
  out.D = std::move(a);
  return out;
}

/// Column echelon form H = A * V (lower staircase, positive pivots, entries
/// left of a pivot reduced modulo it).
struct ColumnEchelon {
  IntMatrix H;
  IntMatrix V;
  std::vector<std::size_t> pivot_rows;
  [[nodiscard]] auto rank() const -> std::size_t { return pivot_rows.size(); }

  /// Solves H * y = b; the returned y has length rank().
  [[nodiscard]] auto solve(const IntVector& b) const -> std::optional<IntVector> {
    require(b.size() == H.rows(), "ColumnEchelon::solve: length mismatch");
    const std::size_t r = rank();
    IntVector y(r);
    Integer acc;
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t p = pivot_rows[k];
      acc = b[p];
      for (std::size_t l = 0; l < k; ++l)
        if (H(p, l) != 0 && y[l] != 0) submul(acc, H(p, l), y[l]);
      if (!divides(H(p, k), acc)) return std::nullopt;
      y[k] = acc / H(p, k);
    }
    for (std::size_t i = 0; i < H.rows(); ++i) {
      acc = b[i];
      for (std::size_t l = 0; l < r; ++l)
        if (H(i, l) != 0 && y[l] != 0) submul(acc, H(i, l), y[l]);
      if (acc != 0) return std::nullopt;
    }
    return y;
  }
};

inline auto column_echelon(IntMatrix a, bool with_transform = true) -> ColumnEchelon {
  const std::size_t m = a.rows(), n = a.cols();
  ColumnEchelon out;
  if (with_transform) out.V = IntMatrix::identity(n);
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    a.swap_cols(x, y);
    if (with_transform) out.V.swap_cols(x, y);
  };
  std::size_t c = 0;
  Integer q;
  for (std::size_t r = 0; r < m && c < n; ++r) {
    // Euclidean reduction along row r with the smallest entry as pivot;
    // columns from c on vanish above row r.
    for (;;) {
      std::size_t p = n;
      for (std::size_t j = c; j < n; ++j)
        if (a(r, j) != 0 && (p == n || abs_cmp(a(r, j), a(r, p)) < 0)) p = j;
      if (p == n) break;
      swap_cols(c, p);
      bool done = true;
      for (std::size_t j = c + 1; j < n; ++j) {
        if (a(r, j) == 0) continue;
        q = floor_div(a(r, j), a(r, c));
        a.col_submul(j, q, c, r);
        if (with_transform) out.V.col_submul(j, q, c);
        if (a(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) {
      a.negate_col(c);
      if (with_transform) out.V.negate_col(c);
    }
    for (std::size_t k = 0; k < c; ++k) {
      if (a(r, k) == 0) continue;
      q = floor_div(a(r, k), a(r, c));
      a.col_submul(k, q, c, r);
      if (with_transform) out.V.col_submul(k, q, c);
    }
    out.pivot_rows.push_back(r);
    ++c;
  }
  out.H = std::move(a);
  return out;
}

/// Some integer x with A x = b, or nullopt when none exists.
inline auto solve_integer(const IntMatrix& a, const IntVector& b)
    -> std::optional<IntVector> {
  require(b.size() == a.rows(), "solve_integer: length mismatch");
  ColumnEchelon e = column_echelon(a, true);
  auto y = e.solve(b);
  if (!y) return std::nullopt;
  IntVector full(a.cols());
  for (std::size_t k = 0; k < y->size(); ++k) full[k] = (*y)[k];
  return e.V * full;
}

/// Basis of the integer kernel {x : A x = 0}, as columns.
inline auto integer_kernel(const IntMatrix& a) -> IntMatrix {
  ColumnEchelon e = column_echelon(a, true);
  std::vector<std::size_t> idx;
  for (std::size_t j = e.rank(); j < a.cols(); ++j) idx.push_back(j);
  return e.V.select_columns(idx);
}

/// A full-rank-in-itself sublattice of Z^n held in column echelon form, so
/// membership and coordinates are forward substitutions.
class Sublattice {
 public:
  Sublattice() = default;
  explicit Sublattice(const IntMatrix& generators) {
    ColumnEchelon e = column_echelon(generators, false);
    std::vector<std::size_t> idx(e.rank());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    echelon_.H = e.H.select_columns(idx);
    echelon_.pivot_rows = e.pivot_rows;
    ambient_ = generators.rows();
  }

  [[nodiscard]] auto ambient_dim() const -> std::size_t { return ambient_; }
  [[nodiscard]] auto rank() const -> std::size_t { return echelon_.rank(); }
  [[nodiscard]] auto basis() const -> const IntMatrix& { return echelon_.H; }
  [[nodiscard]] auto coordinates(const IntVector& v) const -> std::optional<IntVector> {
    return echelon_.solve(v);
  }
  [[nodiscard]] auto contains(const IntVector& v) const -> bool {
    return coordinates(v).has_value();
  }

 private:
  ColumnEchelon echelon_;
  std::size_t ambient_ = 0;
};

/// Sparse row used for congruence constraints.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

/// Builds {x in Z^n : row_i . x == 0 (mod m_i)} one constraint at a time.
/// Each step reduces the constraint's values on the current basis to a single
/// pivot by extended-gcd column moves, then rescales (or drops) that column.
class CongruenceLattice {
 public:
  explicit CongruenceLattice(std::size_t n) : n_(n), basis_(n, IntVector(n)) {
    for (std::size_t i = 0; i < n; ++i) basis_[i][i] = 1;
  }

  void constrain(const SparseRow& row, const Integer& modulus) {
    if (modulus == 1 || row.empty()) return;
    std::vector<Integer> v(basis_.size());
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      for (const auto& [c, val] : row)
        if (basis_[j][c] != 0) addmul(v[j], val, basis_[j][c]);
      if (v[j] != 0 && !divides(modulus, v[j])) nz.push_back(j);
      else if (v[j] != 0 && modulus != 0) v[j] = 0;
    }
    if (nz.empty()) return;
    std::size_t p = nz[0];
    for (std::size_t j : nz)
      if (abs_cmp(v[j], v[p]) < 0) p = j;
    for (std::size_t j : nz) {
      if (j == p) continue;
      auto [g, s, t] = gcdext(v[p], v[j]);
      Integer x = v[p] / g, y = v[j] / g;
      IntVector& bp = basis_[p];
      IntVector& bj = basis_[j];
      Integer np, nj;
      for (std::size_t i = 0; i < n_; ++i) {
        if (bp[i] == 0 && bj[i] == 0) continue;
        np = s * bp[i] + t * bj[i];
        nj = x * bj[i] - y * bp[i];
        bp[i].swap(np);
        bj[i].swap(nj);
      }
      v[p] = g;
      v[j] = 0;
    }
    if (modulus == 0) {
      basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(p));
    } else {
      Integer f = modulus / gcd(v[p], modulus);
      if (f != 1)
        for (auto& x : basis_[p]) x *= f;
    }
  }

  [[nodiscard]] auto basis_matrix() const -> IntMatrix {
    return IntMatrix::from_columns(n_, basis_);
  }
  [[nodiscard]] auto sublattice() const -> Sublattice { return Sublattice(basis_matrix()); }

 private:
  std::size_t n_;
  std::vector<IntVector> basis_;
};

}  // namespace eqhom
