#pragma once

#include <cstddef>
#include <vector>

#include "floq/errors.hpp"

namespace floq {

// Dense row-major matrix, 0-indexed. Just a container; algorithms live with
// their modules.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T init = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, init) {}

  static Matrix identity(std::size_t n, T one) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

}  // namespace floq
