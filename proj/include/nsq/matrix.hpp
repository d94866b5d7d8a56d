#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nsq/rational.hpp"

namespace nsq {

/// Dense exact rational matrix, row-major. Sized for the n x n frames and the
/// small span computations of the verifiers.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    }
    return out;
  }

  bool operator==(const Matrix&) const = default;

  std::size_t rank() const {
    Matrix m = *this;
    return m.eliminate().rank;
  }

  Rational determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    Matrix m = *this;
    return m.eliminate().det;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    if (aug.eliminate(n).rank < n) throw std::domain_error("singular matrix");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    }
    return out;
  }

 private:
  struct Reduction {
    std::size_t rank = 0;
    Rational det = 1;
  };

  // In-place Gauss-Jordan on the first pivot_cols columns.
  Reduction eliminate(std::size_t pivot_cols = static_cast<std::size_t>(-1)) {
    Reduction red{0, 1};
    Matrix& m = *this;
    std::size_t limit = std::min(pivot_cols, cols_);
    std::size_t row = 0;
    for (std::size_t col = 0; col < limit && row < rows_; ++col) {
      std::size_t pivot = row;
      while (pivot < rows_ && m(pivot, col) == 0) ++pivot;
      if (pivot == rows_) {
        red.det = 0;
        continue;
      }
      if (pivot != row) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap(m(pivot, c), m(row, c));
        red.det = -red.det;
      }
      Rational p = m(row, col);
      red.det *= p;
      for (std::size_t c = 0; c < cols_; ++c) m(row, c) /= p;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || m(r, col) == 0) continue;
        Rational f = m(r, col);
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) -= f * m(row, c);
      }
      ++row;
    }
    red.rank = row;
    if (row < rows_ || row < limit) red.det = 0;
    return red;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace nsq
