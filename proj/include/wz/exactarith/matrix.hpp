#pragma once

// Small dense matrices over exact scalars (BigInt, Fp, Gf) and the field
// kernels the Hecke code needs: echelon form, kernel, determinant and the
// characteristic polynomial via Hessenberg reduction.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wz/exactarith/poly.hpp"

namespace wz {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
    if (a.rows_ == 0 || b.cols_ == 0) return Matrix(a.rows_, b.cols_, T{});
    const T zero = a.data_.empty() ? b.data_.front() - b.data_.front() : a.data_.front() - a.data_.front();
    Matrix out(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix: dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix: dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  /// Apply f entrywise, e.g. to reduce an integer matrix mod p or lift into an extension.
  template <class F>
  [[nodiscard]] auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out;
    out.rows_ = rows_;
    out.cols_ = cols_;
    out.data_.reserve(data_.size());
    for (const auto& v : data_) out.data_.push_back(f(v));
    return out;
  }

 private:
  template <class U>
  friend class Matrix;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Matrix-vector product.
template <class T>
std::vector<T> mat_vec(const Matrix<T>& m, const std::vector<T>& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
  std::vector<T> out;
  out.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T acc = v.front().zero();
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out.push_back(acc);
  }
  return out;
}

/// In-place reduced row echelon form over a field; returns the pivot columns.
template <class E>
std::vector<std::size_t> rref(Matrix<E>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    }
    const E inv = m(row, col).inv();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const E factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of the right kernel {v : m v = 0}, one vector per free column.
template <class E>
std::vector<std::vector<E>> kernel(Matrix<E> m, const E& ref) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<E>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<E> v(m.cols(), ref.zero());
    v[free] = ref.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class E>
std::size_t rank(Matrix<E> m) {
  return rref(m).size();
}

template <class E>
E determinant(Matrix<E> m, const E& ref) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  E det = ref.one();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m(sel, col).is_zero()) ++sel;
    if (sel == n) return ref.zero();
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const E inv = m(col, col).inv();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const E factor = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

/// Characteristic polynomial det(xI - m), via reduction to upper Hessenberg form.
template <class E>
Poly<E> charpoly(Matrix<E> h, const E& ref) {
  if (h.rows() != h.cols()) throw std::invalid_argument("charpoly: matrix not square");
  const std::size_t n = h.rows();
  // Similarity transforms to Hessenberg form.
  for (std::size_t col = 0; col + 2 < n; ++col) {
    std::size_t sel = col + 1;
    while (sel < n && h(sel, col).is_zero()) ++sel;
    if (sel == n) continue;
    if (sel != col + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(sel, j), h(col + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, sel), h(i, col + 1));
    }
    const E inv = h(col + 1, col).inv();
    for (std::size_t i = col + 2; i < n; ++i) {
      if (h(i, col).is_zero()) continue;
      const E u = h(i, col) * inv;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(col + 1, j);
      for (std::size_t r = 0; r < n; ++r) h(r, col + 1) += u * h(r, i);
    }
  }
  // Recurrence on leading principal minors of xI - H.
  using P = Poly<E>;
  std::vector<P> p;
  p.reserve(n + 1);
  p.push_back(P::constant(ref.one()));
  const P x = P::x(ref);
  for (std::size_t m = 1; m <= n; ++m) {
    P next = (x - P::constant(h(m - 1, m - 1))) * p[m - 1];
    E prod = ref.one();
    for (std::size_t i = 1; i < m; ++i) {
      prod *= h(m - i, m - i - 1);
      const E t = prod * h(m - i - 1, m - 1);
      next -= P::constant(t) * p[m - i - 1];
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

/// Evaluate a polynomial at a square matrix (Horner).
template <class E>
Matrix<E> poly_eval(const Poly<E>& f, const Matrix<E>& m, const E& ref) {
  const std::size_t n = m.rows();
  Matrix<E> acc(n, n, ref.zero());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * m;
    const E c = f.coeff(i);
    for (std::size_t j = 0; j < n; ++j) acc(j, j) += c;
  }
  return acc;
}

}  // namespace wz
