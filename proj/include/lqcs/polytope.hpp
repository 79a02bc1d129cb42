#pragma once

#include "lqcs/matrix.hpp"
#include "lqcs/norms.hpp"

namespace lqcs {

/// The polytope T(alpha, s) = { v : ||v||_inf <= alpha, ||v||_1 <= s*alpha }.
struct PolytopeSpec {
  double alpha;
  long s;
};

namespace detail {
inline void check_polytope_spec(const PolytopeSpec& spec) {
  if (!(spec.alpha > 0.0)) throw DomainError("polytope: alpha must be > 0");
  if (spec.s < 1) throw DomainError("polytope: s must be >= 1");
}
constexpr double kPolytopeRelTol = 1e-12;
}  // namespace detail

inline bool in_T(const Vector& v, const PolytopeSpec& spec) {
  detail::check_polytope_spec(spec);
  require_finite(v);
  const double slack = 1.0 + detail::kPolytopeRelTol;
  return norm_inf(v) <= spec.alpha * slack &&
         norm1(v) <= static_cast<double>(spec.s) * spec.alpha * slack;
}

/// Membership in U(alpha, s, v): support inside supp(v), at most s
/// nonzeros, the same l1 mass as v, and entries capped at alpha.
inline bool in_U(const Vector& u, const PolytopeSpec& spec, const Vector& v) {
  detail::check_polytope_spec(spec);
  require_finite(u);
  require_finite(v);
  if (u.size() != v.size()) return false;
  long nnz = 0;
  for (size_t j = 0; j < u.size(); ++j) {
    if (u[j] != 0.0) {
      if (v[j] == 0.0) return false;
      ++nnz;
    }
  }
  if (nnz > spec.s) return false;
  if (std::abs(norm1(u) - norm1(v)) > 1e-9 * std::max(1.0, norm1(v))) return false;
  return norm_inf(u) <= spec.alpha + 1e-12 * std::max(1.0, spec.alpha);
}

struct DecompositionTerm {
  double lambda;
  Vector u;
};

/// Convex combination v = sum_i lambda_i u_i with every u_i in U(alpha,s,v).
struct Decomposition {
  std::vector<DecompositionTerm> terms;
};

/// Constructive convex decomposition of v in T(alpha, s) into s-sparse
/// vertices of equal l1 mass.
///
/// Mass-shifting scheme: keep a normalized remainder w (same signs and
/// support as v, ||w||_1 = ||v||_1, w in T). While w has more than s
/// nonzeros, form a vertex u by water-filling the whole l1 mass onto the
/// s largest entries of w, capped at alpha, and peel off the largest
/// lambda that keeps (w - lambda u)/(1 - lambda) sign-consistent and
/// inside T. The binding constraint either zeroes an entry of w or pins
/// one at the cap, and capped entries stay capped, so the loop ends after
/// at most ||v||_0 rounds and the term count is at most ||v||_0 + 1.
inline Decomposition decompose(const Vector& v, const PolytopeSpec& spec) {
  detail::check_polytope_spec(spec);
  require_finite(v);
  const double alpha = spec.alpha;
  const double slack = 1.0 + detail::kPolytopeRelTol;
  if (norm_inf(v) > alpha * slack)
    throw DomainError("decompose: v violates the sup-norm cap ||v||_inf <= alpha");
  if (norm1(v) > static_cast<double>(spec.s) * alpha * slack)
    throw DomainError("decompose: v violates the mass cap ||v||_1 <= s*alpha");

  const long n = static_cast<long>(v.size());
  long nnz = 0;
  for (double x : v)
    if (x != 0.0) ++nnz;
  if (nnz <= spec.s) return Decomposition{{{1.0, v}}};

  const double total = norm1(v);
  Vector w(v.size());           // magnitudes of the remainder
  for (long j = 0; j < n; ++j) w[j] = std::abs(v[j]);
  const auto signed_copy = [&](const Vector& mag) {
    Vector out(mag.size(), 0.0);
    for (long j = 0; j < n; ++j)
      if (mag[j] != 0.0) out[j] = v[j] < 0.0 ? -mag[j] : mag[j];
    return out;
  };

  Decomposition dec;
  double remaining_weight = 1.0;
  const double zero_snap = 1e-14 * std::max(1.0, total);

  for (long round = 0; round <= 2 * nnz + 4; ++round) {
    std::vector<int> order;
    for (int j = 0; j < n; ++j)
      if (w[j] != 0.0) order.push_back(j);
    if (static_cast<long>(order.size()) <= spec.s) {
      dec.terms.push_back({remaining_weight, signed_copy(w)});
      return dec;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (w[a] != w[b]) return w[a] > w[b];
      return a < b;
    });

    // vertex: the full mass on the s largest entries, capped at alpha
    Vector u(v.size(), 0.0);
    double rem = total;
    for (long r = 0; r < spec.s && rem > 0.0; ++r) {
      const double amount = std::min(alpha, rem);
      u[order[r]] = amount;
      rem -= amount;
    }

    // Largest feasible step. Entries already at the cap (within fp noise)
    // are exempt from the cap constraint: the vertex carries them at
    // (essentially) alpha, the rescale keeps them there, and the clamp
    // below absorbs the last-ulp drift.
    const double capped_from = alpha * (1.0 - 1e-12);
    double lam = 1.0;
    for (long j = 0; j < n; ++j) {
      if (u[j] > 0.0) lam = std::min(lam, w[j] / u[j]);          // no sign flip
      if (w[j] != 0.0 && w[j] < capped_from && u[j] < alpha)
        lam = std::min(lam, (alpha - w[j]) / (alpha - u[j]));    // cap after rescale
    }
    if (!(lam > 0.0) || !(lam < 1.0))
      throw std::runtime_error("decompose: step selection failed");

    dec.terms.push_back({remaining_weight * lam, signed_copy(u)});
    remaining_weight *= 1.0 - lam;
    for (long j = 0; j < n; ++j) {
      w[j] = (w[j] - lam * u[j]) / (1.0 - lam);
      if (std::abs(w[j]) <= zero_snap) w[j] = 0.0;
      if (w[j] > alpha) w[j] = alpha;  // clamp fp drift at the cap
    }
  }
  throw std::runtime_error("decompose: failed to terminate");
}

}  // namespace lqcs
