#pragma once

#include "lqcs/eig.hpp"
#include "lqcs/qfuncs.hpp"

namespace lqcs {

constexpr long long kDefaultSupportBudget = 2'000'000;

namespace detail {

/// C(n,k), saturating at huge so budget comparisons cannot overflow.
inline long long choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) {
    if (r > (1ll << 56) / n) return 1ll << 60;  // saturate
    r = r * (n - k + i) / i;
  }
  return r;
}

/// Lexicographic enumeration of k-subsets of {0,...,n-1}.
/// Returns false when the sequence is exhausted.
inline bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

inline std::vector<int> first_combination(int k) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

inline void check_support_budget(long long count, long long budget, const char* who) {
  if (count > budget)
    throw BudgetError(std::string(who) + ": enumeration needs " +
                      std::to_string(count) + " supports, budget is " +
                      std::to_string(budget) +
                      " (exact computation refused, not sampled)");
}

}  // namespace detail

struct RicResult {
  long k = 0;
  double delta = 0.0;
  std::vector<int> witness_support;  // lexicographically first maximizer
};

/// Exact restricted isometry constant delta_k: the maximum over all
/// C(n,k) column supports S of max(lambda_max(G_S)-1, 1-lambda_min(G_S))
/// for the Gram submatrix G_S. Refuses instances beyond the budget.
inline RicResult ric(const Matrix& Phi, long k,
                     long long budget = kDefaultSupportBudget) {
  require_finite(Phi);
  const int n = Phi.cols;
  if (k < 1 || k > n) throw DomainError("ric: k out of range");
  if (k > kMaxEigDim) throw DomainError("ric: k exceeds desk-scale cap (64)");
  detail::check_support_budget(detail::choose(n, k), budget, "ric");

  RicResult res;
  res.k = k;
  res.delta = -1.0;
  std::vector<int> idx = detail::first_combination(static_cast<int>(k));
  do {
    const Matrix G = gram(columns(Phi, idx));
    const auto [lo, hi] = sym_eig_extremes(G);
    const double d = std::max(hi - 1.0, 1.0 - lo);
    if (d > res.delta) {
      res.delta = d;
      res.witness_support = idx;
    }
  } while (detail::next_combination(idx, n));
  res.delta = std::max(res.delta, 0.0);
  return res;
}

struct RocResult {
  long k1 = 0, k2 = 0;
  double theta = 0.0;
  std::vector<int> witness1, witness2;  // disjoint supports attaining theta
};

/// Exact restricted orthogonality constant theta_{k1,k2}: the largest
/// operator norm of Phi_S1^T Phi_S2 over disjoint supports.
inline RocResult roc(const Matrix& Phi, long k1, long k2,
                     long long budget = kDefaultSupportBudget) {
  require_finite(Phi);
  const int n = Phi.cols;
  if (k1 < 1 || k2 < 1 || k1 + k2 > n)
    throw DomainError("roc: requires k1, k2 >= 1 and k1 + k2 <= n");
  detail::check_support_budget(
      detail::choose(n, k1) * std::max(1ll, detail::choose(n - k1, k2)), budget, "roc");

  RocResult res;
  res.k1 = k1;
  res.k2 = k2;
  res.theta = -1.0;

  std::vector<int> s1 = detail::first_combination(static_cast<int>(k1));
  do {
    std::vector<int> complement;
    complement.reserve(n - k1);
    {
      size_t p = 0;
      for (int j = 0; j < n; ++j) {
        if (p < s1.size() && s1[p] == j) { ++p; continue; }
        complement.push_back(j);
      }
    }
    const Matrix P1t = transpose(columns(Phi, s1));
    std::vector<int> pick = detail::first_combination(static_cast<int>(k2));
    do {
      std::vector<int> s2(pick.size());
      for (size_t i = 0; i < pick.size(); ++i) s2[i] = complement[pick[i]];
      const double t = op_norm(matmul(P1t, columns(Phi, s2)));
      if (t > res.theta) {
        res.theta = t;
        res.witness1 = s1;
        res.witness2 = s2;
      }
    } while (detail::next_combination(pick, n - static_cast<int>(k1)));
  } while (detail::next_combination(s1, n));
  res.theta = std::max(res.theta, 0.0);
  return res;
}

/// delta_k is nondecreasing in k; violations beyond 1e-10 indicate a bug
/// in the enumeration, not a property of the matrix.
inline bool check_monotonicity(const Matrix& Phi, long k_max,
                               long long budget = kDefaultSupportBudget) {
  if (k_max < 1 || k_max > Phi.cols)
    throw DomainError("check_monotonicity: k_max out of range");
  double prev = 0.0;
  for (long k = 1; k <= k_max; ++k) {
    const double d = ric(Phi, k, budget).delta;
    if (d < prev - 1e-10) return false;
    prev = d;
  }
  return true;
}

enum class Verdict { satisfied, violated };

enum class BoundKind { theorem1, corollary1, theorem2, tau };

inline const char* to_string(BoundKind which) {
  switch (which) {
    case BoundKind::theorem1: return "theorem1";
    case BoundKind::corollary1: return "corollary1";
    case BoundKind::theorem2: return "theorem2";
    case BoundKind::tau: return "tau";
  }
  return "?";
}

struct BoundCertificate {
  BoundSpec spec;
  BoundKind which = BoundKind::corollary1;
  BoundResult bound;
  double measured_delta = 0.0;
  Verdict verdict = Verdict::violated;
};

namespace detail {

/// The g = k collapse behind the sharp sqrt((t-1)/t) form requires q = 1
/// or c_q * k on the genuine integer branch.
inline bool sharp_case_applies(const QValue& q, long k) {
  return lemma3_integer_case(q, k);
}

}  // namespace detail

inline BoundResult bound_for(const BoundSpec& spec, BoundKind which) {
  switch (which) {
    case BoundKind::theorem1:
      return theorem1_bound(spec);
    case BoundKind::corollary1: {
      detail::check_bound_spec(spec);
      if (!detail::sharp_case_applies(spec.q, spec.k))
        throw DomainError(
            "corollary1 requires q = 1 or c_q * k integral; use theorem1 instead");
      BoundResult r;
      r.ric_order = static_cast<long>(
                        snapped_ceil(static_cast<double>(spec.k) * (spec.t - 1.0))) +
                    spec.k;
      r.bound = sharp_bound(spec.t);
      r.formula_tag = "corollary1";
      return r;
    }
    case BoundKind::theorem2:
      return theorem2_bound(spec.q, spec.k);
    case BoundKind::tau:
      return tau_bound(spec.q, spec.k, spec.tau);
  }
  throw DomainError("unknown bound kind");
}

/// Measure the RIC at the order the selected bound formula demands and
/// compare strictly against the bound.
inline BoundCertificate certify(const Matrix& Phi, const BoundSpec& spec,
                                BoundKind which,
                                long long budget = kDefaultSupportBudget) {
  BoundCertificate cert;
  cert.spec = spec;
  cert.which = which;
  cert.bound = bound_for(spec, which);
  cert.measured_delta = ric(Phi, cert.bound.ric_order, budget).delta;
  cert.verdict = cert.measured_delta < cert.bound.bound ? Verdict::satisfied
                                                        : Verdict::violated;
  return cert;
}

struct RocRicProbe {
  long k = 0;
  double theta = 0.0;   // theta_{k,k}
  double delta = 0.0;   // delta_k
  double factor = 0.0;  // 2 for even k, 2k/sqrt(k^2-1) for odd k
  bool holds = false;   // theta <= factor * delta (within 1e-10)
};

/// Empirical probe of the classical comparison between theta_{k,k} and
/// delta_k (factor 2 for even k, 2k/sqrt(k^2-1) for odd k >= 3). A
/// consistency check on measured constants, not a proof.
inline RocRicProbe roc_vs_ric_probe(const Matrix& Phi, long k,
                                    long long budget = kDefaultSupportBudget) {
  if (k < 2) throw DomainError("roc_vs_ric_probe: k must be >= 2");
  RocRicProbe p;
  p.k = k;
  p.theta = roc(Phi, k, k, budget).theta;
  p.delta = ric(Phi, k, budget).delta;
  p.factor = (k % 2 == 0)
                 ? 2.0
                 : 2.0 * static_cast<double>(k) /
                       std::sqrt(static_cast<double>(k) * k - 1.0);
  p.holds = p.theta <= p.factor * p.delta + 1e-10;
  return p;
}

}  // namespace lqcs
