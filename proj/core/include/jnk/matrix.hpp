#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace jnk {

//! Dense row-major matrix of doubles. Small helper, not a linear-algebra layer.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool is_symmetric(double tol) const {
    if (rows != cols) return false;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < cols; ++j) {
        double d = (*this)(i, j) - (*this)(j, i);
        if (d < -tol || d > tol) return false;
      }
    return true;
  }

  void symmetrize() {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < cols; ++j) {
        double avg = 0.5 * ((*this)(i, j) + (*this)(j, i));
        (*this)(i, j) = avg;
        (*this)(j, i) = avg;
      }
  }
};

}  // namespace jnk
