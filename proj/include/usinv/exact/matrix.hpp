#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "usinv/exact/rational.hpp"

namespace usinv::exact {

/// Dense row-major matrix with 0-based accessors. Entries default to T{}.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const T& b = o(k, j);
          if (!is_zero(b)) out(i, j) += a * b;
        }
      }
    return out;
  }
  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }
  template <class S>
  Matrix scaled(const S& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix sum: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

/// Elementary matrix unit E_{ij} with 1-based indices.
inline QMatrix unit_matrix(std::size_t n, int i, int j) {
  QMatrix m(n, n);
  m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = 1;
  return m;
}

inline Rational trace(const QMatrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// exp of a nilpotent matrix, as the finite Taylor sum.
template <class T>
Matrix<T> nilpotent_exp(const Matrix<T>& x) {
  const std::size_t n = x.rows();
  Matrix<T> result = Matrix<T>::identity(n);
  Matrix<T> power = Matrix<T>::identity(n);
  Rational factorial = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * x;
    if (power.is_zero_matrix()) return result;
    factorial *= static_cast<long>(k);
    Rational inv = 1 / factorial;
    result = result + power.scaled(inv);
  }
  throw std::invalid_argument("nilpotent_exp: matrix is not nilpotent");
}

/// Determinant by fraction-free Bareiss elimination on a copy.
Rational determinant(const QMatrix& m);

}  // namespace usinv::exact
