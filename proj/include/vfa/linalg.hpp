#pragma once

#include "vfa/scalar.hpp"

#include <cstddef>
#include <vector>

namespace vfa {

/// Dense exact matrix over Q(i), row-major.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& other) const;
  /// Columns of `this` followed by columns of `other`.
  Matrix hconcat(const Matrix& other) const;

  /// In-place reduced row echelon form; returns the pivot column of each
  /// nonzero row, in order.
  std::vector<std::size_t> rref();
  std::size_t rank() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

}  // namespace vfa
