#pragma once
// Straightforward dense reference routines, written independently of the
// library's sparse elimination.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "usinv/exact/matrix.hpp"

namespace oracle {

using usinv::exact::QMatrix;
using usinv::exact::Rational;
using DenseRows = std::vector<std::vector<Rational>>;

// Plain Gauss-Jordan over the rationals, returns the rank.
inline int dense_rank(DenseRows a) {
  int rank = 0;
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t p = static_cast<std::size_t>(rank);
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[static_cast<std::size_t>(rank)]);
    auto& piv = a[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
      Rational f = a[r][c] / piv[c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * piv[k];
    }
    ++rank;
  }
  return rank;
}

// Permutation expansion of the determinant.
inline Rational leibniz_det(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline QMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline DenseRows rows_of(const QMatrix& m) {
  DenseRows out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

}  // namespace oracle
