#pragma once

#include <utility>

#include "lqcs/matrix.hpp"

namespace lqcs {

constexpr int kMaxEigDim = 64;

struct EigenSystem {
  Vector values;    // ascending
  Matrix vectors;   // columns are the matching eigenvectors (orthonormal)
};

namespace detail {

inline void check_symmetric(const Matrix& G) {
  if (G.rows != G.cols) throw DomainError("eig: matrix is not square");
  if (G.rows > kMaxEigDim) throw DomainError("eig: dimension exceeds desk-scale cap (64)");
  double scale = 1.0;
  for (double v : G.data) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < G.rows; ++i)
    for (int j = i + 1; j < G.cols; ++j)
      if (std::abs(G(i, j) - G(j, i)) > 1e-12 * scale)
        throw DomainError("eig: matrix is not symmetric within 1e-12");
}

inline double off_diag_norm(const Matrix& A) {
  double s = 0.0;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (i != j) s += sq(A(i, j));
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps run
/// until the off-diagonal Frobenius norm drops below 1e-14 relative to
/// the matrix scale; eigenvectors are the accumulated rotations, so they
/// stay orthonormal to machine precision.
inline EigenSystem jacobi_eigensystem(const Matrix& G) {
  detail::check_symmetric(G);
  const int n = G.rows;
  Matrix A = G;
  Matrix V = Matrix::identity(n);

  double scale = 0.0;
  for (double v : A.data) scale += v * v;
  scale = std::max(1.0, std::sqrt(scale));
  const double target = 1e-14 * scale;

  for (int sweep = 0; sweep < 100 && detail::off_diag_norm(A) > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= 1e-300) {
          A(p, q) = A(q, p) = 0.0;
          continue;
        }
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = A(p, p), aqq = A(q, q);
        A(p, p) = app - t * apq;
        A(q, q) = aqq + t * apq;
        A(p, q) = A(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = A(r, p), arq = A(r, q);
            A(r, p) = A(p, r) = arp - s * (arq + tau * arp);
            A(r, q) = A(q, r) = arq + s * (arp - tau * arq);
          }
          const double vrp = V(r, p), vrq = V(r, q);
          V(r, p) = vrp - s * (vrq + tau * vrp);
          V(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  // sort ascending, carrying eigenvectors along
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return A(a, a) < A(b, b); });
  EigenSystem es;
  es.values.resize(n);
  es.vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    es.values[j] = A(order[j], order[j]);
    for (int i = 0; i < n; ++i) es.vectors(i, j) = V(i, order[j]);
  }
  return es;
}

/// Extreme eigenvalues (min, max) of a symmetric matrix.
inline std::pair<double, double> sym_eig_extremes(const Matrix& G) {
  const EigenSystem es = jacobi_eigensystem(G);
  return {es.values.front(), es.values.back()};
}

/// Largest singular value, computed as sqrt(lambda_max(A^T A)).
inline double op_norm(const Matrix& A) {
  if (A.rows > kMaxEigDim || A.cols > kMaxEigDim)
    throw DomainError("op_norm: dimension exceeds desk-scale cap (64)");
  bool all_zero = true;
  for (double v : A.data)
    if (v != 0.0) { all_zero = false; break; }
  if (all_zero) return 0.0;
  const auto [lo, hi] = sym_eig_extremes(gram(A));
  (void)lo;
  return std::sqrt(std::max(0.0, hi));
}

namespace detail {

/// Gaussian elimination with partial pivoting on a square system.
/// Throws when a pivot falls below 1e-12 relative to the matrix scale.
inline Vector solve_square(Matrix A, Vector b, const char* who) {
  const int n = A.rows;
  if (A.cols != n || static_cast<int>(b.size()) != n)
    throw DomainError(std::string(who) + ": inconsistent dimensions");
  double scale = 0.0;
  for (double v : A.data) scale = std::max(scale, std::abs(v));
  const double pivot_tol = 1e-12 * std::max(1.0, scale);

  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
    if (std::abs(A(piv, k)) < pivot_tol)
      throw DomainError(std::string(who) + ": matrix is singular or rank deficient");
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(A(k, j), A(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = A(i, k) / A(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
      b[i] -= f * b[k];
    }
  }
  Vector x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return x;
}

}  // namespace detail

/// Least-squares solution of min ||Ax - b||_2 via the normal equations.
/// Rank deficiency (pivot below 1e-12) is reported as a DomainError.
inline Vector least_squares(const Matrix& A, const Vector& b) {
  if (static_cast<int>(b.size()) != A.rows)
    throw DomainError("least_squares: dimension mismatch");
  const Matrix At = transpose(A);
  const Matrix AtA = matmul(At, A);
  const Vector Atb = matvec(At, b);
  return detail::solve_square(AtA, Atb, "least_squares");
}

/// Orthonormal basis of the null space of A (m < n required), as the
/// eigenvectors of A^T A whose eigenvalues vanish relative to the largest.
inline Matrix null_space_basis(const Matrix& A) {
  if (A.rows >= A.cols)
    throw DomainError("null_space_basis: requires m < n");
  const EigenSystem es = jacobi_eigensystem(gram(A));
  const double lam_max = std::max(es.values.back(), 0.0);
  const double tol = 1e-12 * std::max(1.0, lam_max) * A.cols;
  std::vector<int> keep;
  for (int j = 0; j < static_cast<int>(es.values.size()); ++j)
    if (es.values[j] <= tol) keep.push_back(j);
  if (keep.empty())
    throw DomainError("null_space_basis: numerically trivial null space");
  Matrix B(A.cols, static_cast<int>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j)
    for (int i = 0; i < A.cols; ++i) B(i, static_cast<int>(j)) = es.vectors(i, keep[j]);
  return B;
}

}  // namespace lqcs
