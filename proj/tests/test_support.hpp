#pragma once

#include <random>
#include <vector>

#include "jnk/matrix.hpp"

namespace jnk::test {

//! Random symmetric PSD matrix G G' (plus a small ridge so diagonals stay
//! comfortably positive).
inline Matrix random_psd(std::mt19937& rng, std::size_t k, double ridge = 1e-6) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix g(k, k);
  for (auto& v : g.data) v = u(rng);
  Matrix s(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += g(i, t) * g(j, t);
      s(i, j) = acc;
    }
  for (std::size_t i = 0; i < k; ++i) s(i, i) += ridge;
  return s;
}

//! Lower-triangular Cholesky factor; input must be positive definite.
inline Matrix cholesky(const Matrix& a) {
  const std::size_t n = a.rows;
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = a(i, j);
      for (std::size_t t = 0; t < j; ++t) acc -= l(i, t) * l(j, t);
      if (i == j) {
        l(i, i) = std::sqrt(acc);
      } else {
        l(i, j) = acc / l(j, j);
      }
    }
  }
  return l;
}

//! Solves A x = b in place via Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
    x[i] = acc / a(i, i);
  }
  return x;
}

//! Matrix inverse via column-wise solves. Small systems only.
inline Matrix invert(const Matrix& a) {
  const std::size_t n = a.rows;
  Matrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> e(n, 0.0);
    e[c] = 1.0;
    auto col = solve(a, e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

}  // namespace jnk::test
