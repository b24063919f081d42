#pragma once

#include "eqhom/error.hpp"
#include "eqhom/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace eqhom {

using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      require(row.size() == cols_, "IntMatrix: ragged initializer");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static auto identity(std::size_t n) -> IntMatrix {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static auto scalar(std::size_t n, const Integer& s) -> IntMatrix {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }
  static auto from_columns(std::size_t rows, const std::vector<IntVector>& cols)
      -> IntMatrix {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      require(cols[j].size() == rows, "IntMatrix::from_columns: bad length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  [[nodiscard]] auto rows() const -> std::size_t { return rows_; }
  [[nodiscard]] auto cols() const -> std::size_t { return cols_; }
  [[nodiscard]] auto empty() const -> bool { return rows_ == 0 || cols_ == 0; }

  auto operator()(std::size_t i, std::size_t j) -> Integer& {
    return data_[i * cols_ + j];
  }
  auto operator()(std::size_t i, std::size_t j) const -> const Integer& {
    return data_[i * cols_ + j];
  }

  auto row(std::size_t i) -> std::span<Integer> {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] auto row(std::size_t i) const -> std::span<const Integer> {
    return {data_.data() + i * cols_, cols_};
  }

  [[nodiscard]] auto column(std::size_t j) const -> IntVector {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, const IntVector& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  [[nodiscard]] auto is_zero() const -> bool {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Integer& x) { return x == 0; });
  }

  [[nodiscard]] auto transpose() const -> IntMatrix {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Columns listed in `idx`, in that order.
  [[nodiscard]] auto select_columns(std::span<const std::size_t> idx) const
      -> IntMatrix {
    IntMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
  }
  [[nodiscard]] auto select_rows(std::span<const std::size_t> idx) const
      -> IntMatrix {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] -= q * row[src]
  void row_submul(std::size_t dst, const Integer& q, std::size_t src,
                  std::size_t from_col = 0) {
    if (q == 0) return;
    for (std::size_t j = from_col; j < cols_; ++j)
      if ((*this)(src, j) != 0) submul((*this)(dst, j), q, (*this)(src, j));
  }
  /// col[dst] -= q * col[src]
  void col_submul(std::size_t dst, const Integer& q, std::size_t src,
                  std::size_t from_row = 0) {
    if (q == 0) return;
    for (std::size_t i = from_row; i < rows_; ++i)
      if ((*this)(i, src) != 0) submul((*this)(i, dst), q, (*this)(i, src));
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }
  /// (row a, row b) <- (x*a + y*b, z*a + w*b)
  void combine_rows(std::size_t a, std::size_t b, const Integer& x,
                    const Integer& y, const Integer& z, const Integer& w,
                    std::size_t from_col = 0) {
    Integer na, nb;
    for (std::size_t j = from_col; j < cols_; ++j) {
      Integer& ra = (*this)(a, j);
      Integer& rb = (*this)(b, j);
      if (ra == 0 && rb == 0) continue;
      na = x * ra + y * rb;
      nb = z * ra + w * rb;
      ra.swap(na);
      rb.swap(nb);
    }
  }
  /// (col a, col b) <- (x*a + y*b, z*a + w*b)
  void combine_cols(std::size_t a, std::size_t b, const Integer& x,
                    const Integer& y, const Integer& z, const Integer& w,
                    std::size_t from_row = 0) {
    Integer na, nb;
    for (std::size_t i = from_row; i < rows_; ++i) {
      Integer& ca = (*this)(i, a);
      Integer& cb = (*this)(i, b);
      if (ca == 0 && cb == 0) continue;
      na = x * ca + y * cb;
      nb = z * ca + w * cb;
      ca.swap(na);
      cb.swap(nb);
    }
  }

  [[nodiscard]] auto operator*(const IntMatrix& o) const -> IntMatrix {
    require(cols_ == o.rows_, "IntMatrix: dimension mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Integer& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (o(k, j) != 0) addmul(r(i, j), a, o(k, j));
      }
    return r;
  }
  [[nodiscard]] auto operator*(const IntVector& v) const -> IntVector {
    require(cols_ == v.size(), "IntMatrix: dimension mismatch in product");
    IntVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (v[k] != 0 && (*this)(i, k) != 0) addmul(r[i], (*this)(i, k), v[k]);
    return r;
  }
  [[nodiscard]] auto operator+(const IntMatrix& o) const -> IntMatrix {
    require(rows_ == o.rows_ && cols_ == o.cols_, "IntMatrix: shape mismatch");
    IntMatrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
    return r;
  }
  [[nodiscard]] auto operator-(const IntMatrix& o) const -> IntMatrix {
    require(rows_ == o.rows_ && cols_ == o.cols_, "IntMatrix: shape mismatch");
    IntMatrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
  }
  auto operator==(const IntMatrix& o) const -> bool = default;

  /// [A | B]
  [[nodiscard]] auto hstack(const IntMatrix& o) const -> IntMatrix {
    require(rows_ == o.rows_, "IntMatrix::hstack: row mismatch");
    IntMatrix r(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
  }
  /// [A ; B]
  [[nodiscard]] auto vstack(const IntMatrix& o) const -> IntMatrix {
    require(cols_ == o.cols_ || rows_ == 0 || o.rows_ == 0,
            "IntMatrix::vstack: column mismatch");
    std::size_t c = rows_ ? cols_ : o.cols_;
    IntMatrix r(rows_ + o.rows_, c);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < c; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
      for (std::size_t j = 0; j < c; ++j) r(rows_ + i, j) = o(i, j);
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline auto operator<<(std::ostream& os, const IntMatrix& m) -> std::ostream& {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << ']';
}

/// Block-diagonal matrix diag(a, b).
inline auto block_diagonal(const IntMatrix& a, const IntMatrix& b) -> IntMatrix {
  IntMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

}  // namespace eqhom
