#pragma once

#include <algorithm>
#include <numeric>

#include "lqcs/qfuncs.hpp"

namespace lqcs {

/// Sum_j |x_j|^q (the q-th power of the lq quasi-norm). At the q -> 0
/// limit this is the support size ||x||_0.
inline double lq_q(const Vector& x, const QValue& q) {
  require_finite(x);
  if (q.at_zero()) {
    double count = 0.0;
    for (double v : x)
      if (v != 0.0) count += 1.0;
    return count;
  }
  const double qv = q.value();
  double s = 0.0;
  for (double v : x) {
    if (v != 0.0) s += std::pow(std::abs(v), qv);
  }
  return s;
}

struct NormStats {
  double l0;
  double l1;
  double l2;
  double linf;    // max_i |x_i|
  double lminf;   // min_i |x_i|, minimum over all entries including zeros
};

inline NormStats norm_stats(const Vector& x) {
  require_finite(x);
  if (x.empty()) throw DomainError("norm_stats: empty vector");
  NormStats s{0.0, 0.0, 0.0, 0.0, std::abs(x[0])};
  for (double v : x) {
    const double a = std::abs(v);
    if (v != 0.0) s.l0 += 1.0;
    s.l1 += a;
    s.l2 += a * a;
    s.linf = std::max(s.linf, a);
    s.lminf = std::min(s.lminf, a);
  }
  s.l2 = std::sqrt(s.l2);
  return s;
}

namespace detail {

inline double effective_q(const QValue& q) {
  if (q.at_zero()) throw DomainError("operation requires q in (0,1]");
  if (q.at_one()) return 1.0;
  return q.value();
}

inline double lq_norm(const Vector& x, double qv) {
  double s = 0.0;
  for (double v : x)
    if (v != 0.0) s += std::pow(std::abs(v), qv);
  return s == 0.0 ? 0.0 : std::pow(s, 1.0 / qv);
}

}  // namespace detail

/// Slack of the n-based lq/l1 comparison: for q in (0,1],
///   ||x||_1 <= ||x||_q n^{1-1/q} + p_q n (||x||_inf - ||x||_-inf).
/// Returns RHS - LHS, which is nonnegative for every real vector.
inline double lemma2_residual(const Vector& x, const QValue& q) {
  require_finite(x);
  if (x.empty()) throw DomainError("lemma2_residual: empty vector");
  const double qv = detail::effective_q(q);
  const double n = static_cast<double>(x.size());
  const NormStats s = norm_stats(x);
  const double rhs = detail::lq_norm(x, qv) * std::pow(n, 1.0 - 1.0 / qv) +
                     p_q(q) * n * (s.linf - s.lminf);
  return rhs - s.l1;
}

/// Same inequality with n replaced by ||x||_0 throughout; the minimum is
/// then taken over the nonzero entries (the support carries the whole
/// substitution). Rejects the zero vector.
inline double lemma2_support_residual(const Vector& x, const QValue& q) {
  require_finite(x);
  const double qv = detail::effective_q(q);
  const NormStats s = norm_stats(x);
  if (s.l0 == 0.0) throw DomainError("lemma2_support_residual: zero vector");
  double min_nz = s.linf;
  for (double v : x)
    if (v != 0.0) min_nz = std::min(min_nz, std::abs(v));
  const double rhs = detail::lq_norm(x, qv) * std::pow(s.l0, 1.0 - 1.0 / qv) +
                     p_q(q) * s.l0 * (s.linf - min_nz);
  return rhs - s.l1;
}

struct Prop1Slack {
  double lower;  // ||x||_1 - ||x||_0^{1-1/q} ||x||_q
  double upper;  // (||x||_0^{1-1/q} + p_q ||x||_0) ||x||_q - ||x||_1
};

/// Two-sided l1/lq comparison; both slacks are nonnegative for x != 0.
inline Prop1Slack prop1_check(const Vector& x, const QValue& q) {
  require_finite(x);
  const double qv = detail::effective_q(q);
  const NormStats s = norm_stats(x);
  if (s.l0 == 0.0) throw DomainError("prop1_check: zero vector");
  const double xq = detail::lq_norm(x, qv);
  const double holder = std::pow(s.l0, 1.0 - 1.0 / qv);
  return {s.l1 - holder * xq, (holder + p_q(q) * s.l0) * xq - s.l1};
}

struct HeadTailSplit {
  Vector head;  // k largest-magnitude entries, zeros elsewhere
  Vector tail;  // the remainder; head + tail == input exactly
  long k;
};

namespace detail {

/// Indices ordered by descending magnitude, ties by ascending index.
inline std::vector<int> magnitude_order(const Vector& x) {
  std::vector<int> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(x[a]), mb = std::abs(x[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  return idx;
}

}  // namespace detail

/// Split h into its k largest-magnitude entries and the remainder.
/// Ties are broken toward the lower index, so the split is deterministic.
inline HeadTailSplit head_tail(const Vector& h, long k) {
  require_finite(h);
  const long n = static_cast<long>(h.size());
  if (k < 1 || k > n) throw DomainError("head_tail: k out of range");
  const std::vector<int> idx = detail::magnitude_order(h);
  HeadTailSplit split{Vector(h.size(), 0.0), h, k};
  for (long j = 0; j < k; ++j) {
    split.head[idx[j]] = h[idx[j]];
    split.tail[idx[j]] = 0.0;
  }
  return split;
}

/// Partition the nonzero entries into blocks of `block_size`, each block
/// holding the next largest-magnitude entries (ties toward lower index).
/// Blocks have disjoint supports and sum to the input; the zero vector
/// yields no blocks.
inline std::vector<Vector> block_partition(const Vector& tail, long block_size) {
  require_finite(tail);
  if (block_size < 1) throw DomainError("block_partition: block size must be >= 1");
  const std::vector<int> idx = detail::magnitude_order(tail);
  std::vector<Vector> blocks;
  Vector current;
  long filled = 0;
  for (int i : idx) {
    if (tail[i] == 0.0) break;  // magnitudes are sorted; the rest are zeros
    if (filled == 0) current.assign(tail.size(), 0.0);
    current[i] = tail[i];
    if (++filled == block_size) {
      blocks.push_back(std::move(current));
      current.clear();
      filled = 0;
    }
  }
  if (filled > 0) blocks.push_back(std::move(current));
  return blocks;
}

}  // namespace lqcs
