#pragma once

#include "lqcs/matrix.hpp"

namespace lqcs {

/// Equality-form linear program: min c^T x  s.t.  A x = b, x >= 0.
struct LinearProgram {
  Vector c;
  Matrix A;
  Vector b;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Vector x;
  double objective = 0.0;
  long iterations = 0;
};

/// Dense two-phase primal simplex. Bland's rule everywhere (lowest
/// eligible column enters, ratio ties broken by lowest basic index), so
/// the pivot sequence is deterministic and cycling is impossible.
/// Artificial columns are never allowed to re-enter; a redundant row
/// simply keeps its artificial basic at level zero.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp)
      : m_(lp.A.rows), nv_(lp.A.cols), cost_(lp.c) {
    if (static_cast<int>(lp.b.size()) != m_ || static_cast<int>(lp.c.size()) != nv_)
      throw DomainError("simplex: inconsistent LP dimensions");
    require_finite(lp.A, "LP matrix");
    require_finite(lp.b, "LP rhs");
    require_finite(lp.c, "LP objective");

    double scale = 1.0;
    for (double v : lp.A.data) scale = std::max(scale, std::abs(v));
    for (double v : lp.b) scale = std::max(scale, std::abs(v));
    pivot_tol_ = 1e-12 * scale;
    cost_tol_ = 1e-9;

    // tableau: m rows of [A | I] | b, with rows flipped to make b >= 0
    ncols_ = nv_ + m_;
    T_ = Matrix(m_, ncols_ + 1);
    for (int i = 0; i < m_; ++i) {
      const double sgn = lp.b[i] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < nv_; ++j) T_(i, j) = sgn * lp.A(i, j);
      T_(i, nv_ + i) = 1.0;
      T_(i, ncols_) = sgn * lp.b[i];
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = nv_ + i;
  }

  LpResult solve() {
    LpResult res;

    // phase 1: minimize the sum of artificials
    Vector r(ncols_, 0.0);
    for (int j = 0; j < nv_; ++j) {
      double s = 0.0;
      for (int i = 0; i < m_; ++i) s += T_(i, j);
      r[j] = -s;
    }
    double phase1_obj = 0.0;
    for (int i = 0; i < m_; ++i) phase1_obj += T_(i, ncols_);
    if (!iterate(r, /*allow_artificial=*/false, res.iterations)) {
      // phase-1 objective is bounded below by zero; unbounded here means a bug
      throw std::runtime_error("simplex: phase 1 reported unbounded");
    }
    phase1_obj = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= nv_) phase1_obj += T_(i, ncols_);
    if (phase1_obj > 1e-8 * std::max(1.0, norm1_b_())) {
      res.status = LpStatus::infeasible;
      return res;
    }

    // pivot remaining artificials out where a nonzero original entry exists
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < nv_) continue;
      for (int j = 0; j < nv_; ++j) {
        if (std::abs(T_(i, j)) > pivot_tol_ && !is_basic_(j)) {
          pivot_(i, j);
          ++res.iterations;
          break;
        }
      }
    }

    // phase 2: reduced costs of the true objective
    for (int j = 0; j < ncols_; ++j) r[j] = j < nv_ ? cost_[j] : 0.0;
    for (int i = 0; i < m_; ++i) {
      const int jb = basis_[i];
      const double cb = jb < nv_ ? cost_[jb] : 0.0;
      if (cb == 0.0) continue;
      for (int j = 0; j < ncols_; ++j) r[j] -= cb * T_(i, j);
    }
    if (!iterate(r, /*allow_artificial=*/false, res.iterations)) {
      res.status = LpStatus::unbounded;
      return res;
    }

    res.status = LpStatus::optimal;
    res.x.assign(nv_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nv_) res.x[basis_[i]] = T_(i, ncols_);
    res.objective = 0.0;
    for (int j = 0; j < nv_; ++j) res.objective += cost_[j] * res.x[j];
    return res;
  }

 private:
  double norm1_b_() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s += std::abs(T_(i, ncols_));
    return s;
  }

  bool is_basic_(int j) const {
    for (int i = 0; i < m_; ++i)
      if (basis_[i] == j) return true;
    return false;
  }

  // returns false on unboundedness
  bool iterate(Vector& r, bool allow_artificial, long& iters) {
    const long cap = 1000000;
    for (;;) {
      if (++iters > cap) throw std::runtime_error("simplex: iteration cap exceeded");
      int enter = -1;
      const int limit = allow_artificial ? ncols_ : nv_;
      for (int j = 0; j < limit; ++j) {
        if (r[j] < -cost_tol_ && !is_basic_(j)) { enter = j; break; }
      }
      if (enter < 0) return true;  // optimal

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (T_(i, enter) > pivot_tol_) {
          const double ratio = T_(i, ncols_) / T_(i, enter);
          if (leave < 0 || ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;  // unbounded

      const double rs = r[enter];
      pivot_(leave, enter);
      // cost-row update uses the normalized pivot row
      for (int j = 0; j < ncols_; ++j) r[j] -= rs * T_(leave, j);
      r[enter] = 0.0;
    }
  }

  void pivot_(int row, int col) {
    const double p = T_(row, col);
    for (int j = 0; j <= ncols_; ++j) T_(row, j) /= p;
    T_(row, col) = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = T_(i, col);
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols_; ++j) T_(i, j) -= f * T_(row, j);
      T_(i, col) = 0.0;
    }
    basis_[row] = col;
  }

  int m_, nv_, ncols_;
  Vector cost_;
  Matrix T_;
  std::vector<int> basis_;
  double pivot_tol_, cost_tol_;
};

inline LpResult simplex_solve(const LinearProgram& lp) {
  return SimplexSolver(lp).solve();
}

}  // namespace lqcs
