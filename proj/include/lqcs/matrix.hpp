#pragma once

#include <algorithm>
#include <span>

#include "lqcs/common.hpp"

namespace lqcs {

/// Dense row-major matrix of doubles. Desk scale: the exact-enumeration
/// machinery in this library caps dimensions at 64.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {
    if (r < 1 || c < 1) throw DomainError("matrix dimensions must be >= 1");
  }

  double& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
  }
};

inline void require_finite(const Matrix& A, const char* what = "matrix") {
  for (double v : A.data) {
    if (!std::isfinite(v))
      throw DomainError(std::string(what) + " contains a non-finite entry");
  }
}

inline Matrix transpose(const Matrix& A) {
  Matrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

inline Matrix matmul(const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw DomainError("matmul: inner dimensions disagree");
  Matrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const double aik = A(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

inline Vector matvec(const Matrix& A, const Vector& x) {
  if (static_cast<int>(x.size()) != A.cols)
    throw DomainError("matvec: dimension mismatch");
  Vector y(A.rows, 0.0);
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

/// Column submatrix Phi_S for a support S given as column indices.
inline Matrix columns(const Matrix& A, std::span<const int> idx) {
  if (idx.empty()) throw DomainError("columns: empty support");
  Matrix C(A.rows, static_cast<int>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] < 0 || idx[j] >= A.cols) throw DomainError("columns: index out of range");
    for (int i = 0; i < A.rows; ++i) C(i, static_cast<int>(j)) = A(i, idx[j]);
  }
  return C;
}

/// A^T A.
inline Matrix gram(const Matrix& A) {
  Matrix G(A.cols, A.cols);
  for (int i = 0; i < A.cols; ++i)
    for (int j = i; j < A.cols; ++j) {
      double s = 0.0;
      for (int r = 0; r < A.rows; ++r) s += A(r, i) * A(r, j);
      G(i, j) = G(j, i) = s;
    }
  return G;
}

inline double norm2(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double norm1(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

inline double norm_inf(const Vector& x) {
  double s = 0.0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

inline Vector sub(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

/// Scale every column to unit l2 norm. Columns with negligible norm are
/// left untouched.
inline Matrix normalize_columns(const Matrix& A) {
  Matrix B = A;
  for (int j = 0; j < A.cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < A.rows; ++i) s += sq(A(i, j));
    s = std::sqrt(s);
    if (s > 1e-300)
      for (int i = 0; i < A.rows; ++i) B(i, j) /= s;
  }
  return B;
}

}  // namespace lqcs
