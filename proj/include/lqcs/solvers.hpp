#pragma once

#include <optional>

#include "lqcs/norms.hpp"
#include "lqcs/rip.hpp"
#include "lqcs/rng.hpp"
#include "lqcs/simplex.hpp"

namespace lqcs {

/// Underdetermined linear system Phi x = y with Phi m x n, m < n.
struct RecoveryProblem {
  Matrix Phi;
  Vector y;
};

namespace detail {
inline void check_problem(const RecoveryProblem& prob) {
  require_finite(prob.Phi, "Phi");
  require_finite(prob.y, "y");
  if (static_cast<int>(prob.y.size()) != prob.Phi.rows)
    throw DomainError("recovery problem: y length disagrees with Phi rows");
  if (prob.Phi.rows >= prob.Phi.cols)
    throw DomainError("recovery problem: requires m < n");
}
}  // namespace detail

struct SolverResult {
  Vector x_hat;
  double residual = 0.0;    // ||Phi x_hat - y||_2, recomputed from x_hat
  double objective = 0.0;   // the method's own norm of x_hat
  long iterations = 0;
  bool converged = false;
};

/// Exhaustive minimum-support solve: scan supports of size 0,1,...,k_cap
/// in lexicographic order and return the first exactly-consistent
/// least-squares solution. Exact by construction; serves as the ground
/// truth oracle for the other solvers.
inline SolverResult l0_solve(const RecoveryProblem& prob, long k_cap,
                             long long budget = kDefaultSupportBudget) {
  detail::check_problem(prob);
  const int n = prob.Phi.cols;
  if (k_cap < 0 || k_cap > n) throw DomainError("l0_solve: k_cap out of range");
  long long total = 0;
  for (long j = 1; j <= k_cap; ++j) total += detail::choose(n, j);
  detail::check_support_budget(total, budget, "l0_solve");

  SolverResult res;
  res.x_hat.assign(n, 0.0);
  const double ynorm = norm2(prob.y);
  const double tol = 1e-8 * (1.0 + ynorm);

  if (ynorm <= tol) {
    res.converged = true;
    res.residual = ynorm;
    return res;
  }
  for (long j = 1; j <= k_cap; ++j) {
    std::vector<int> idx = detail::first_combination(static_cast<int>(j));
    do {
      ++res.iterations;
      Vector coef;
      try {
        coef = least_squares(columns(prob.Phi, idx), prob.y);
      } catch (const DomainError&) {
        continue;  // rank-deficient support: any solution here has a
                   // sparser representation found at an earlier size
      }
      Vector x(n, 0.0);
      for (size_t p = 0; p < idx.size(); ++p) x[idx[p]] = coef[p];
      const double r = norm2(sub(matvec(prob.Phi, x), prob.y));
      if (r <= tol) {
        res.x_hat = std::move(x);
        res.residual = r;
        res.objective = static_cast<double>(norm_stats(res.x_hat).l0);
        res.converged = true;
        return res;
      }
    } while (detail::next_combination(idx, n));
  }
  res.converged = false;
  res.residual = ynorm;
  return res;
}

/// Basis pursuit via the positive/negative split LP:
/// min sum(xp + xm)  s.t.  Phi (xp - xm) = y, xp, xm >= 0.
inline SolverResult l1_solve(const RecoveryProblem& prob) {
  detail::check_problem(prob);
  const int m = prob.Phi.rows, n = prob.Phi.cols;
  LinearProgram lp;
  lp.c.assign(2 * n, 1.0);
  lp.b = prob.y;
  lp.A = Matrix(m, 2 * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      lp.A(i, j) = prob.Phi(i, j);
      lp.A(i, n + j) = -prob.Phi(i, j);
    }
  const LpResult sol = simplex_solve(lp);

  SolverResult res;
  res.iterations = sol.iterations;
  res.x_hat.assign(n, 0.0);
  if (sol.status != LpStatus::optimal) {
    res.converged = false;
    res.residual = norm2(prob.y);
    return res;
  }
  for (int j = 0; j < n; ++j) res.x_hat[j] = sol.x[j] - sol.x[n + j];
  res.residual = norm2(sub(matvec(prob.Phi, res.x_hat), prob.y));
  res.objective = norm1(res.x_hat);
  res.converged = true;
  return res;
}

struct IrlsParams {
  double eps0 = 1.0;
  double eps_decay = 0.5;
  double eps_min = 1e-8;
  int inner_iters = 50;
  double tol = 1e-9;
  int restarts = 5;       // total starts: min-norm + (restarts-1) perturbed
  uint64_t seed = 0x1234;
};

/// Iteratively reweighted least-norm heuristic for min ||x||_q^q subject
/// to Phi x = y, 0 < q < 1. Each iterate solves the weighted interpolation
///   x = D Phi^T (Phi D Phi^T)^{-1} y,  D = diag((x_j^2 + eps^2)^{1 - q/2}),
/// so feasibility is exact at every step; eps anneals geometrically.
/// Returns the best iterate seen across all starts by ||.||_q^q. The
/// minimizer is nonconvex so success is empirical, not certified.
inline SolverResult lq_solve(const RecoveryProblem& prob, const QValue& q,
                             const IrlsParams& params = {}) {
  detail::check_problem(prob);
  if (q.at_zero() || q.at_one())
    throw DomainError("lq_solve: requires q strictly inside (0,1)");
  const double qv = q.value();
  const int m = prob.Phi.rows, n = prob.Phi.cols;
  const Matrix Phit = transpose(prob.Phi);

  // min-l2-norm feasible point; rank-deficient rows are flagged, not fixed
  Vector x0;
  try {
    const Vector z = detail::solve_square(gram(Phit), prob.y, "lq_solve");
    x0 = matvec(Phit, z);
  } catch (const DomainError&) {
    SolverResult res;
    res.x_hat.assign(n, 0.0);
    res.residual = norm2(prob.y);
    res.converged = false;
    return res;
  }

  const Matrix Nbasis = null_space_basis(prob.Phi);
  const double x0norm = norm2(x0);

  SolverResult best;
  best.x_hat = x0;
  best.objective = lq_q(x0, q);
  best.converged = false;

  for (int restart = 0; restart < params.restarts; ++restart) {
    Vector x = x0;
    if (restart > 0) {
      // feasible perturbation along the null space
      for (int c = 0; c < Nbasis.cols; ++c) {
        const double a = (1.0 + x0norm) *
                         rng::normal(params.seed, rng::kGenericStream + restart, c);
        for (int i = 0; i < n; ++i) x[i] += a * Nbasis(i, c);
      }
    }
    bool stage_converged = false;
    for (double eps = params.eps0; eps >= params.eps_min;
         eps *= params.eps_decay) {
      stage_converged = false;
      for (int it = 0; it < params.inner_iters; ++it) {
        ++best.iterations;
        // weights w_j = (x_j^2 + eps^2)^{q/2 - 1}; D = 1/w
        Matrix PDPt(m, m);
        Vector d(n);
        for (int j = 0; j < n; ++j)
          d[j] = std::pow(x[j] * x[j] + eps * eps, 1.0 - qv / 2.0);
        for (int r = 0; r < m; ++r)
          for (int c = r; c < m; ++c) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += prob.Phi(r, j) * d[j] * prob.Phi(c, j);
            PDPt(r, c) = PDPt(c, r) = s;
          }
        Vector z;
        try {
          z = detail::solve_square(PDPt, prob.y, "lq_solve");
        } catch (const DomainError&) {
          break;  // weighted system degenerate at this eps; move on
        }
        Vector xn(n);
        const Vector Ptz = matvec(Phit, z);
        for (int j = 0; j < n; ++j) xn[j] = d[j] * Ptz[j];

        const double obj = lq_q(xn, q);
        if (obj < best.objective) {
          best.objective = obj;
          best.x_hat = xn;
        }
        const double change = norm2(sub(xn, x));
        x = std::move(xn);
        if (change <= params.tol) {
          stage_converged = true;
          break;
        }
      }
    }
    if (stage_converged) best.converged = true;
  }

  // Debias the winner: the annealed iterate parks off-support entries
  // near eps_min^{2-q/..} instead of zero, which inflates ||.||_q^q.
  // Re-solving least squares on the detected support removes that floor;
  // the candidate only replaces the iterate when it stays feasible and
  // lowers the objective.
  {
    const double cut = 1e-6 * std::max(1.0, norm_inf(best.x_hat));
    std::vector<int> support;
    for (int j = 0; j < n; ++j)
      if (std::abs(best.x_hat[j]) > cut) support.push_back(j);
    if (!support.empty() && static_cast<int>(support.size()) <= m) {
      try {
        const Vector coef = least_squares(columns(prob.Phi, support), prob.y);
        Vector xs(n, 0.0);
        for (size_t p = 0; p < support.size(); ++p) xs[support[p]] = coef[p];
        const double r = norm2(sub(matvec(prob.Phi, xs), prob.y));
        if (r <= 1e-8 * (1.0 + norm2(prob.y)) &&
            lq_q(xs, q) < lq_q(best.x_hat, q))
          best.x_hat = std::move(xs);
      } catch (const DomainError&) {
        // rank-deficient support: keep the raw iterate
      }
    }
  }

  best.objective = lq_q(best.x_hat, q);
  best.residual = norm2(sub(matvec(prob.Phi, best.x_hat), prob.y));
  return best;
}

enum class NspStatus { verified, falsified, unknown };

inline const char* to_string(NspStatus s) {
  switch (s) {
    case NspStatus::verified: return "verified";
    case NspStatus::falsified: return "falsified";
    case NspStatus::unknown: return "unknown";
  }
  return "?";
}

struct NspVerdict {
  NspStatus status = NspStatus::unknown;
  std::optional<Vector> counterexample;  // null-space h with head >= tail
  /// Largest ||h_max(k)||_q^q - ||h_-max(k)||_q^q found over normalized
  /// null-space candidates; negative margin means no violation was found
  /// (and for the exhaustive strategy, that none exists).
  double margin = 0.0;
};

enum class NspStrategy { exhaustive_l1, heuristic };

struct NspParams {
  int restarts = 24;
  int steps = 300;
  double step0 = 0.5;
  uint64_t seed = 0x777;
};

namespace detail {

/// max sigma^T h_S over { h : Phi h = 0, ||h||_1 <= 1 } by LP on the
/// split h = hp - hm with a slack row for the l1 ball. The null space
/// property of order k holds iff every such optimum is < 1/2.
inline std::pair<double, Vector> nsp_support_lp(const Matrix& Phi,
                                                const std::vector<int>& S,
                                                const std::vector<int>& sigma) {
  const int m = Phi.rows, n = Phi.cols;
  LinearProgram lp;
  lp.c.assign(2 * n + 1, 0.0);
  for (size_t p = 0; p < S.size(); ++p) {
    lp.c[S[p]] = -static_cast<double>(sigma[p]);
    lp.c[n + S[p]] = static_cast<double>(sigma[p]);
  }
  lp.A = Matrix(m + 1, 2 * n + 1);
  lp.b.assign(m + 1, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      lp.A(i, j) = Phi(i, j);
      lp.A(i, n + j) = -Phi(i, j);
    }
  for (int j = 0; j < 2 * n; ++j) lp.A(m, j) = 1.0;
  lp.A(m, 2 * n) = 1.0;  // slack
  lp.b[m] = 1.0;
  const LpResult sol = simplex_solve(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("nsp_check: interior LP failed");
  Vector h(n);
  for (int j = 0; j < n; ++j) h[j] = sol.x[j] - sol.x[n + j];
  return {-sol.objective, h};
}

}  // namespace detail

/// Decide the null space property of order k: for every nonzero h with
/// Phi h = 0, ||h_max(k)||_q^q < ||h_-max(k)||_q^q.
///
/// exhaustive_l1 (q = 1 only) solves one LP per (support, sign pattern)
/// and is an exact decision procedure. heuristic (any q) runs multi-start
/// ascent over the null-space sphere and can only falsify or give up:
/// nonconvex maximization yields no certificate, so it never answers
/// "verified".
inline NspVerdict nsp_check(const Matrix& Phi, long k, const QValue& q,
                            NspStrategy strategy, const NspParams& params = {},
                            long long budget = kDefaultSupportBudget) {
  require_finite(Phi);
  const int n = Phi.cols;
  if (Phi.rows >= n)
    throw DomainError("nsp_check: m >= n leaves only the trivial null space");
  if (k < 1 || k > n) throw DomainError("nsp_check: k out of range");

  NspVerdict verdict;
  if (strategy == NspStrategy::exhaustive_l1) {
    if (!q.at_one())
      throw DomainError("nsp_check: exhaustive strategy requires q = 1");
    detail::check_support_budget(
        detail::choose(n, k) * (1ll << std::min<long>(k, 62)), budget, "nsp_check");

    double best_v = -1.0;
    Vector best_h;
    std::vector<int> S = detail::first_combination(static_cast<int>(k));
    do {
      std::vector<int> sigma(k, 1);
      for (long long mask = 0; mask < (1ll << k); ++mask) {
        for (long b = 0; b < k; ++b) sigma[b] = (mask >> b) & 1 ? -1 : 1;
        auto [v, h] = detail::nsp_support_lp(Phi, S, sigma);
        if (v > best_v) {
          best_v = v;
          best_h = std::move(h);
        }
      }
    } while (detail::next_combination(S, n));

    // at ||h||_1 = 1 the head/tail gap is 2v - 1
    verdict.margin = 2.0 * best_v - 1.0;
    if (verdict.margin >= -1e-10) {
      verdict.status = NspStatus::falsified;
      verdict.counterexample = std::move(best_h);
    } else {
      verdict.status = NspStatus::verified;
    }
    return verdict;
  }

  // heuristic: maximize head - tail of B z over the unit sphere in
  // null-space coordinates by seeded compass search
  const Matrix B = null_space_basis(Phi);
  const int d = B.cols;
  const auto objective = [&](const Vector& z) {
    Vector h = matvec(B, z);
    const double nh = norm2(h);
    if (nh < 1e-300) return -1e300;
    for (double& v : h) v /= nh;
    const HeadTailSplit split = head_tail(h, k);
    return lq_q(split.head, q) - lq_q(split.tail, q);
  };

  double best_f = -1e300;
  Vector best_z;
  for (int restart = 0; restart < params.restarts; ++restart) {
    Vector z(d);
    for (int i = 0; i < d; ++i)
      z[i] = rng::normal(params.seed, rng::kGenericStream + 100 + restart, i);
    double zn = norm2(z);
    if (zn < 1e-12) z[0] = zn = 1.0;
    for (double& v : z) v /= zn;

    double f = objective(z);
    double step = params.step0;
    uint64_t draw = 0;
    for (int it = 0; it < params.steps && step > 1e-7; ++it) {
      Vector cand(d);
      for (int i = 0; i < d; ++i)
        cand[i] = z[i] + step * rng::normal(params.seed,
                                            rng::kGenericStream + 500 + restart,
                                            draw++);
      const double cn = norm2(cand);
      for (double& v : cand) v /= cn;
      const double fc = objective(cand);
      if (fc > f) {
        z = std::move(cand);
        f = fc;
        step *= 1.2;
      } else {
        step *= 0.8;
      }
    }
    if (f > best_f) {
      best_f = f;
      best_z = z;
    }
  }

  verdict.margin = best_f;
  if (best_f >= -1e-10) {
    Vector h = matvec(B, best_z);
    const double nh = norm2(h);
    for (double& v : h) v /= nh;
    verdict.status = NspStatus::falsified;
    verdict.counterexample = std::move(h);
  } else {
    verdict.status = NspStatus::unknown;
  }
  return verdict;
}

struct RecoveryRecord {
  std::string method;
  double q = 1.0;             // exponent used, 0 for the l0 oracle
  double residual = 0.0;
  double objective = 0.0;
  long iterations = 0;
  bool converged = false;
  bool support_match = false;
  bool exact = false;         // relative l2 error <= 1e-6
};

struct RecoveryReport {
  std::vector<RecoveryRecord> records;
};

struct RecoverOptions {
  bool run_l0 = false;
  long l0_cap = 4;
  bool run_l1 = true;
  bool run_lq = false;
  QValue q = QValue::exact(0.5);
  IrlsParams irls;
  long long budget = kDefaultSupportBudget;
};

namespace detail {

inline std::vector<int> thresholded_support(const Vector& x) {
  const double tol = 1e-8 * (1.0 + norm_inf(x));
  std::vector<int> s;
  for (size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > tol) s.push_back(static_cast<int>(i));
  return s;
}

inline RecoveryRecord grade(const SolverResult& sol, const Vector& x_true,
                            std::string method, double q) {
  RecoveryRecord rec;
  rec.method = std::move(method);
  rec.q = q;
  rec.residual = sol.residual;
  rec.objective = sol.objective;
  rec.iterations = sol.iterations;
  rec.converged = sol.converged;
  rec.exact = norm2(sub(sol.x_hat, x_true)) <= 1e-6 * (1.0 + norm2(x_true));
  rec.support_match =
      thresholded_support(sol.x_hat) == thresholded_support(x_true);
  return rec;
}

}  // namespace detail

/// Run the selected solvers against a known planted signal and grade each
/// outcome. Requires Phi x_true = y (within 1e-10) so the comparison is
/// meaningful.
inline RecoveryReport recover_and_compare(const RecoveryProblem& prob,
                                          const Vector& x_true,
                                          const RecoverOptions& opt = {}) {
  detail::check_problem(prob);
  require_finite(x_true, "x_true");
  if (x_true.size() != static_cast<size_t>(prob.Phi.cols))
    throw DomainError("recover_and_compare: x_true length disagrees with Phi");
  if (norm2(sub(matvec(prob.Phi, x_true), prob.y)) >
      1e-10 * (1.0 + norm2(prob.y)))
    throw DomainError("recover_and_compare: x_true does not satisfy Phi x = y");

  RecoveryReport report;
  if (opt.run_l0)
    report.records.push_back(detail::grade(
        l0_solve(prob, opt.l0_cap, opt.budget), x_true, "l0", 0.0));
  if (opt.run_l1)
    report.records.push_back(detail::grade(l1_solve(prob), x_true, "l1", 1.0));
  if (opt.run_lq)
    report.records.push_back(detail::grade(lq_solve(prob, opt.q, opt.irls),
                                           x_true, "lq", opt.q.value()));
  return report;
}

}  // namespace lqcs
