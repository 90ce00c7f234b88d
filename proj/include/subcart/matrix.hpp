#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "subcart/error.hpp"
#include "subcart/rational.hpp"

namespace subcart {

// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw DimensionMismatch("vector length " + std::to_string(v.size()) + " vs " + std::to_string(cols_) + " columns");
    Vector out(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of row r, increasing
  std::vector<std::size_t> free;    // non-pivot columns, increasing

  std::size_t rank() const { return pivots.size(); }
};

// Gauss-Jordan elimination. Columns are scanned left to right and the first
// row at or below the current one with a nonzero entry becomes the pivot row,
// so the result depends only on the input matrix.
inline RowEchelon rref(Matrix m) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (next < out.pivots.size() && out.pivots[next] == c) {
      ++next;
    } else {
      out.free.push_back(c);
    }
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

// Kernel basis read off a reduced echelon form: one vector per free column,
// equal to 1 there and 0 on the other free columns.
inline std::vector<Vector> kernel_basis(const RowEchelon& e) {
  std::vector<Vector> basis;
  const std::size_t n = e.reduced.cols();
  for (std::size_t f : e.free) {
    Vector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<Vector> kernel_basis(const Matrix& m) { return kernel_basis(rref(m)); }

inline bool is_zero(const Vector& v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

inline Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace subcart
