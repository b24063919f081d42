#pragma once

// Elementary divisors of large sparse integer matrices (bar-complex boundary
// maps) by unit-pivot elimination with a Markowitz-style pivot choice, then a
// dense Smith normal form on whatever is left.
//
// The elimination first runs on checked 64-bit entries and restarts on
// arbitrary-precision entries if any intermediate value would overflow.

#include "eqhom/finab.hpp"
#include "eqhom/normal_form.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace eqhom {

struct SparseMatrix {
  using Entry = std::pair<std::uint32_t, std::int64_t>;  // (row, value)
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Entry>> columns;  // each sorted by row, no zeros

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  /// Sorts and merges duplicate rows in column j.
  void normalize_column(std::size_t j) {
    auto& col = columns[j];
    std::sort(col.begin(), col.end());
    std::vector<Entry> merged;
    merged.reserve(col.size());
    for (const auto& e : col) {
      if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
      else merged.push_back(e);
    }
    std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
    col.swap(merged);
  }

  [[nodiscard]] auto nonzeros() const -> std::size_t {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }

  [[nodiscard]] auto to_dense() const -> IntMatrix {
    IntMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (const auto& [r, v] : columns[j]) m(r, j) = v;
    return m;
  }

  static auto from_dense(const IntMatrix& m) -> SparseMatrix {
    SparseMatrix s(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, j) != 0) {
          require(m(i, j).fits_slong_p(), "SparseMatrix: entry too large");
          s.columns[j].emplace_back(static_cast<std::uint32_t>(i), m(i, j).get_si());
        }
    return s;
  }
};

/// Rank and the non-unit invariant factors of a matrix.
struct DivisorSummary {
  std::size_t rank = 0;
  IntVector divisors;  // nonzero invariant factors other than 1, sorted
};

namespace detail {

struct OverflowSignal : std::overflow_error {
  OverflowSignal() : std::overflow_error("sparse elimination: 64-bit overflow") {}
};

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<std::int64_t> {
  static auto from(std::int64_t v) -> std::int64_t { return v; }
  static auto is_unit(std::int64_t v) -> bool { return v == 1 || v == -1; }
  static auto is_zero(std::int64_t v) -> bool { return v == 0; }
  static auto mul(std::int64_t a, std::int64_t b) -> std::int64_t {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowSignal();
    return r;
  }
  static auto sub(std::int64_t a, std::int64_t b) -> std::int64_t {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowSignal();
    return r;
  }
  static auto neg(std::int64_t a) -> std::int64_t { return sub(0, a); }
  static auto to_integer(std::int64_t v) -> Integer { return Integer(static_cast<long>(v)); }
};

template <>
struct ScalarOps<Integer> {
  static auto from(std::int64_t v) -> Integer { return Integer(static_cast<long>(v)); }
  static auto is_unit(const Integer& v) -> bool { return eqhom::is_unit(v); }
  static auto is_zero(const Integer& v) -> bool { return v == 0; }
  static auto mul(const Integer& a, const Integer& b) -> Integer { return a * b; }
  static auto sub(const Integer& a, const Integer& b) -> Integer { return a - b; }
  static auto neg(const Integer& a) -> Integer { return -a; }
  static auto to_integer(const Integer& v) -> Integer { return v; }
};

template <class S>
auto eliminate(const SparseMatrix& input) -> DivisorSummary {
  using Ops = ScalarOps<S>;
  struct E {
    std::uint32_t row;
    S val;
  };
  const std::size_t nr = input.rows, nc = input.cols;
  std::vector<std::vector<E>> cols(nc);
  std::vector<std::vector<std::uint32_t>> row_cols(nr);
  std::vector<std::int64_t> row_count(nr, 0);
  for (std::size_t j = 0; j < nc; ++j) {
    cols[j].reserve(input.columns[j].size());
    for (const auto& [r, v] : input.columns[j]) {
      cols[j].push_back({r, Ops::from(v)});
      row_cols[r].push_back(static_cast<std::uint32_t>(j));
      ++row_count[r];
    }
  }
  std::vector<char> col_dead(nc, 0);
  std::size_t unit_rank = 0;
  std::vector<E> merged;
  std::vector<std::uint32_t> order;
  bool progress = true;
  while (progress) {
    progress = false;
    order.clear();
    for (std::size_t j = 0; j < nc; ++j)
      if (!col_dead[j] && !cols[j].empty()) order.push_back(static_cast<std::uint32_t>(j));
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return cols[a].size() < cols[b].size();
    });
    for (std::uint32_t c : order) {
      if (col_dead[c] || cols[c].empty()) continue;
      std::size_t best = cols[c].size();
      for (std::size_t k = 0; k < cols[c].size(); ++k)
        if (Ops::is_unit(cols[c][k].val) &&
            (best == cols[c].size() || row_count[cols[c][k].row] < row_count[cols[c][best].row]))
          best = k;
      if (best == cols[c].size()) continue;
      const std::uint32_t r = cols[c][best].row;
      const S u = cols[c][best].val;
      const std::vector<E> pivot_col = cols[c];
      std::vector<std::uint32_t> touched;
      touched.swap(row_cols[r]);
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (std::uint32_t c2 : touched) {
        if (c2 == c || col_dead[c2]) continue;
        auto& col = cols[c2];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const E& e, std::uint32_t row) { return e.row < row; });
        if (it == col.end() || it->row != r) continue;
        const S factor = Ops::mul(it->val, u);  // u = +-1, so a / u = a * u
        merged.clear();
        merged.reserve(col.size() + pivot_col.size());
        std::size_t i = 0, k = 0;
        while (i < col.size() || k < pivot_col.size()) {
          if (k == pivot_col.size() || (i < col.size() && col[i].row < pivot_col[k].row)) {
            merged.push_back(col[i++]);
          } else if (i == col.size() || pivot_col[k].row < col[i].row) {
            merged.push_back({pivot_col[k].row, Ops::neg(Ops::mul(factor, pivot_col[k].val))});
            row_cols[pivot_col[k].row].push_back(c2);
            ++row_count[pivot_col[k].row];
            ++k;
          } else {
            S v = Ops::sub(col[i].val, Ops::mul(factor, pivot_col[k].val));
            if (Ops::is_zero(v)) --row_count[col[i].row];
            else merged.push_back({col[i].row, std::move(v)});
            ++i;
            ++k;
          }
        }
        col.swap(merged);
      }
      for (const auto& e : pivot_col) --row_count[e.row];
      cols[c].clear();
      col_dead[c] = 1;
      row_count[r] = 0;
      ++unit_rank;
      progress = true;
    }
  }

  // Dense Smith form on the residue.
  std::vector<std::size_t> live_cols;
  std::vector<std::int64_t> row_index(nr, -1);
  std::size_t live_rows = 0;
  for (std::size_t j = 0; j < nc; ++j) {
    if (col_dead[j] || cols[j].empty()) continue;
    live_cols.push_back(j);
    for (const auto& e : cols[j])
      if (row_index[e.row] < 0) row_index[e.row] = static_cast<std::int64_t>(live_rows++);
  }
  DivisorSummary out;
  out.rank = unit_rank;
  if (!live_cols.empty()) {
    IntMatrix rest(live_rows, live_cols.size());
    for (std::size_t k = 0; k < live_cols.size(); ++k)
      for (const auto& e : cols[live_cols[k]])
        rest(static_cast<std::size_t>(row_index[e.row]), k) = Ops::to_integer(e.val);
    if (rest.rows() > rest.cols()) rest = rest.transpose();
    SmithForm s = smith_normal_form(std::move(rest), false);
    out.rank += s.rank;
    for (std::size_t i = 0; i < s.rank; ++i)
      if (s.diagonal[i] != 1) out.divisors.push_back(s.diagonal[i]);
  }
  std::sort(out.divisors.begin(), out.divisors.end());
  return out;
}

}  // namespace detail

inline auto sparse_divisors(const SparseMatrix& m) -> DivisorSummary {
  try {
    return detail::eliminate<std::int64_t>(m);
  } catch (const detail::OverflowSignal&) {
    return detail::eliminate<Integer>(m);
  }
}

/// Homology orders at a middle term of rank n from the invariant factors of
/// the incoming and outgoing boundaries, with coefficients Z/modulus. A free
/// complex over Z splits into pieces Z -e-> Z and Z; tensoring each piece with
/// Z/m contributes Z/gcd(e, m) in both of its degrees.
inline auto homology_from_divisors(std::size_t n, const DivisorSummary& incoming,
                                   const DivisorSummary& outgoing, const Integer& modulus)
    -> IntVector {
  require(incoming.rank + outgoing.rank <= n, "homology_from_divisors: ranks exceed dimension");
  const std::size_t free_rank = n - incoming.rank - outgoing.rank;
  IntVector orders(free_rank, modulus);
  for (const auto& e : incoming.divisors) orders.push_back(modulus == 0 ? e : gcd(e, modulus));
  if (modulus != 0)
    for (const auto& f : outgoing.divisors) orders.push_back(gcd(f, modulus));
  return canonical_divisors(orders);
}

}  // namespace eqhom
