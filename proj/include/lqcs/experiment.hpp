#pragma once

#include <ostream>

#include "lqcs/csv.hpp"
#include "lqcs/solvers.hpp"

namespace lqcs {

/// Gaussian measurement matrix with i.i.d. N(0, 1/m) entries. Entry (r,c)
/// is a pure function of (seed, r, c), so generation order is irrelevant.
inline Matrix gen_matrix(uint64_t seed, int m, int n) {
  if (m < 1 || n < 1) throw DomainError("gen_matrix: dimensions must be >= 1");
  Matrix A(m, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c)
      A(r, c) = scale * rng::normal(seed, rng::kMatrixRowStream + r, c);
  return A;
}

/// k-sparse signal with a uniformly random support (partial Fisher-Yates)
/// and standard normal nonzeros, deterministic under the seed.
inline Vector gen_sparse_signal(uint64_t seed, int n, int k) {
  if (n < 1) throw DomainError("gen_sparse_signal: n must be >= 1");
  if (k < 1 || k > n) throw DomainError("gen_sparse_signal: k out of range");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    const double u = rng::uniform01(seed, rng::kSignalSupportStream, i);
    const int j = i + std::min(n - 1 - i, static_cast<int>(u * (n - i)));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> support(pool.begin(), pool.begin() + k);
  std::sort(support.begin(), support.end());
  Vector x(n, 0.0);
  for (int i = 0; i < k; ++i)
    x[support[i]] = rng::normal(seed, rng::kSignalValueStream, i);
  return x;
}

enum class Method { l0, l1, lq };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::l0: return "l0";
    case Method::l1: return "l1";
    case Method::lq: return "lq";
  }
  return "?";
}

struct ExperimentConfig {
  uint64_t seed = 1;
  int m = 8;
  int n = 16;
  int k_min = 1;
  int k_max = 4;
  int trials = 50;
  Method method = Method::l1;
  QValue q = QValue::exact(0.5);
  IrlsParams irls;
  long long budget = kDefaultSupportBudget;
};

struct PhaseCell {
  int k = 0;
  int trials = 0;
  int successes = 0;
  double rate = 0.0;
};

/// Success rate of exact recovery per sparsity level. Each trial draws a
/// fresh (matrix, signal) pair from a seed derived by (seed, k, trial),
/// so the sweep is reproducible cell by cell.
inline std::vector<PhaseCell> run_phase(const ExperimentConfig& cfg) {
  if (cfg.k_min < 1 || cfg.k_max < cfg.k_min || cfg.k_max > cfg.n)
    throw DomainError("run_phase: bad k range");
  if (cfg.trials < 1) throw DomainError("run_phase: trials must be >= 1");

  std::vector<PhaseCell> cells;
  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    PhaseCell cell;
    cell.k = k;
    cell.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const uint64_t ts = rng::derive(cfg.seed, static_cast<uint64_t>(k), trial);
      RecoveryProblem prob;
      prob.Phi = gen_matrix(ts, cfg.m, cfg.n);
      const Vector x0 = gen_sparse_signal(rng::derive(ts, 1), cfg.n, k);
      prob.y = matvec(prob.Phi, x0);

      SolverResult sol;
      switch (cfg.method) {
        case Method::l0: sol = l0_solve(prob, k, cfg.budget); break;
        case Method::l1: sol = l1_solve(prob); break;
        case Method::lq: sol = lq_solve(prob, cfg.q, cfg.irls); break;
      }
      if (norm2(sub(sol.x_hat, x0)) <= 1e-6 * (1.0 + norm2(x0)))
        ++cell.successes;
    }
    cell.rate = static_cast<double>(cell.successes) / cell.trials;
    cells.push_back(cell);
  }
  return cells;
}

inline void write_phase_csv(std::ostream& os, const ExperimentConfig& cfg,
                            const std::vector<PhaseCell>& cells) {
  os << "k,method,q,trials,successes,rate\n";
  const double qv = cfg.method == Method::lq ? cfg.q.value()
                    : cfg.method == Method::l1 ? 1.0
                                               : 0.0;
  for (const PhaseCell& c : cells)
    os << c.k << ',' << to_string(cfg.method) << ',' << csv::fmt(qv) << ','
       << c.trials << ',' << c.successes << ',' << csv::fmt(c.rate) << '\n';
}

}  // namespace lqcs
