#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "lqcs/qvalue.hpp"

namespace lqcs {

/// c_q = q^{q/(q-1)}, extended to [0,1] by its limits: 1 at q=0 and e at
/// q=1. Nondecreasing in q.
inline double c_q(const QValue& q) {
  if (q.at_zero()) return 1.0;
  if (q.at_one()) return std::numbers::e;
  const double v = q.value();
  return std::pow(v, v / (v - 1.0));
}

/// p_q = q^{q/(1-q)} - q^{1/(1-q)}, extended by p_0 = 1 and p_1 = 0.
/// Nonincreasing and convex on [0,1].
inline double p_q(const QValue& q) {
  if (q.at_zero()) return 1.0;
  if (q.at_one()) return 0.0;
  const double v = q.value();
  return std::pow(v, v / (1.0 - v)) - std::pow(v, 1.0 / (1.0 - v));
}

/// True when c_q * k hits the integer branch: within 1e-9 relative of an
/// integer AND stable under the 1/q log-space amplification. For tiny q
/// the exponent 1/q blows a snap distance of d up to a factor e^{d/q} in
/// the leading term, so an accidental proximity (c_q - 1 itself is below
/// the snap tolerance once q < ~1e-7) must not be treated as the genuine
/// integer case.
inline bool lemma3_integer_case(const QValue& q, long k) {
  if (q.at_zero() || q.above_half()) return false;
  if (q.at_one()) return true;  // g = k regardless of the ceiling
  const double ck = c_q(q) * static_cast<double>(k);
  const double dist = std::abs(ck - std::round(ck));
  return dist <= 1e-9 * std::max(1.0, ck) &&
         dist / (q.value() * std::max(1.0, ck)) <= 1e-6;
}

/// The ceiling term ceil(c_q * k) with one-sided limit semantics:
///   q -> 0+ : c_q -> 1 from above, so the ceiling is k+1;
///   q -> 1/2+ : c_q -> 2 from above, so the ceiling is 2k+1;
/// at exact q the value snaps to an integer on the genuine integer branch.
inline long lemma3_ceil(const QValue& q, long k) {
  if (k < 1) throw DomainError("lemma3_ceil: k must be >= 1");
  if (q.at_zero()) return k + 1;
  if (q.above_half()) return 2 * k + 1;
  const double ck = c_q(q) * static_cast<double>(k);
  if (lemma3_integer_case(q, k)) return std::lround(ck);
  return static_cast<long>(std::ceil(ck));
}

/// g(q,k) = ceil(c_q k)^{1-1/q} k^{1/q} + p_q ceil(c_q k), extended to
/// q in [0,1] by g(0+,k) = k+1 and g(1-,k) = k. Equals k exactly whenever
/// c_q * k is an integer, and never exceeds k + p_q otherwise.
inline double g_func(const QValue& q, long k) {
  if (k < 1) throw DomainError("g: k must be >= 1");
  if (q.at_zero()) return static_cast<double>(k) + 1.0;
  if (q.at_one()) return static_cast<double>(k);
  const double v = q.value();
  const double m = static_cast<double>(lemma3_ceil(q, k));
  // m^{1-1/q} k^{1/q} in log space: the factors overflow/underflow
  // separately for tiny q while the product tends cleanly to 0
  const double lead = std::exp((1.0 - 1.0 / v) * std::log(m) +
                               std::log(static_cast<double>(k)) / v);
  return lead + p_q(q) * m;
}

/// mu(t, theta) = (sqrt((t+theta-1)(t-1)) + 1 - t) / theta. Lies in (0,1)
/// for every t > 1, theta > 0.
inline double mu(double t, double theta) {
  if (!(t > 1.0)) throw DomainError("mu: requires t > 1");
  if (!(theta > 0.0)) throw DomainError("mu: requires theta > 0");
  return (std::sqrt((t + theta - 1.0) * (t - 1.0)) + 1.0 - t) / theta;
}

/// gamma(rho, theta) = (rho - rho^2) / (1/2 - rho + rho^2 (1 + theta/(2(t-1)))).
/// The denominator carries t even though the classical notation lists only
/// (rho, theta), so t is an explicit argument here.
inline double gamma_bound(double rho, double theta, double t) {
  if (!(t > 1.0)) throw DomainError("gamma: requires t > 1");
  if (!(rho >= 0.0) || !(theta >= 0.0))
    throw DomainError("gamma: requires rho >= 0 and theta >= 0");
  const double denom = 0.5 - rho + rho * rho * (1.0 + theta / (2.0 * (t - 1.0)));
  if (!(denom > 0.0)) throw DomainError("gamma: nonpositive denominator");
  return (rho - rho * rho) / denom;
}

/// The sharp order-tk bound sqrt((t-1)/t).
inline double sharp_bound(double t) {
  if (!(t > 1.0)) throw DomainError("sharp_bound: requires t > 1");
  return std::sqrt((t - 1.0) / t);
}

struct BoundSpec {
  QValue q = QValue::exact(0.5);
  long k = 1;
  double t = 2.0;
  double tau = 2.0;
};

struct BoundResult {
  long ric_order = 0;   // subscript of the certified delta
  double bound = 0.0;   // strict upper bound required of that delta
  std::string formula_tag;
};

namespace detail {
inline void check_bound_spec(const BoundSpec& s) {
  if (s.k < 1) throw DomainError("bound spec: k must be >= 1");
  if (!(s.t > 1.0)) throw DomainError("bound spec: t must be > 1");
  if (!(s.tau > 1.0)) throw DomainError("bound spec: tau must be > 1");
}
}  // namespace detail

/// Order-(g(q,k)(t-1)+k) sufficient bound. A fractional subscript is
/// rounded up, which only weakens t to the next value that makes the
/// subscript integral.
inline BoundResult theorem1_bound(const BoundSpec& spec) {
  detail::check_bound_spec(spec);
  const double g = g_func(spec.q, spec.k);
  const double theta = g / static_cast<double>(spec.k);
  BoundResult r;
  // g(t-1) > 0 for t > 1, so the rounded-up increment is at least 1
  r.ric_order =
      std::max(1l, static_cast<long>(snapped_ceil(g * (spec.t - 1.0)))) + spec.k;
  r.bound = gamma_bound(mu(spec.t, theta), theta, spec.t);
  r.formula_tag = "theorem1";
  return r;
}

/// Order-(tau k) bound, with tau k required integral so the subscript is
/// defined. k_uniform selects the variant that replaces g(q,k)/k with
/// g(q,1), valid uniformly over k >= 1.
inline BoundResult tau_bound(const QValue& q, long k, double tau,
                             bool k_uniform = false) {
  if (k < 1) throw DomainError("tau_bound: k must be >= 1");
  if (!(tau > 1.0)) throw DomainError("tau_bound: tau must be > 1");
  const double tk = tau * static_cast<double>(k);
  if (!nearly_integer(tk) || std::lround(tk) <= k)
    throw DomainError("tau_bound: tau*k must be an integer above k, got " +
                      std::to_string(tk));
  const double theta = k_uniform ? g_func(q, 1)
                                 : g_func(q, k) / static_cast<double>(k);
  const double t = 1.0 + (tau - 1.0) / theta;
  BoundResult r;
  r.ric_order = std::lround(tk);
  r.bound = gamma_bound(mu(t, theta), theta, t);
  r.formula_tag = k_uniform ? "tau_k_uniform" : "tau";
  return r;
}

/// Order-k bound: 1/(1 + 2 ceil(g)/k) for even k >= 2 and
/// 1/(1 + 2 ceil(g)/sqrt(k^2-1)) for odd k >= 3.
inline BoundResult theorem2_bound(const QValue& q, long k) {
  if (k < 2) throw DomainError("theorem2_bound: k must be >= 2");
  const double gceil = snapped_ceil(g_func(q, k));
  BoundResult r;
  r.ric_order = k;
  if (k % 2 == 0) {
    r.bound = 1.0 / (1.0 + 2.0 * gceil / static_cast<double>(k));
    r.formula_tag = "theorem2_even";
  } else {
    r.bound = 1.0 / (1.0 + 2.0 * gceil /
                               std::sqrt(static_cast<double>(k) * k - 1.0));
    r.formula_tag = "theorem2_odd";
  }
  return r;
}

struct Table2Row {
  double tau;
  long k0;
  QValue regime;
  long ric_order;
  double bound;
};

/// Order-(tau k) limit bounds for tau in {2,3,4}, k0 = 1..k_max, in the
/// two one-sided regimes q -> 0+ and q -> 1/2+. Each row bounds delta_{tau k}
/// for every k >= k0 in the stated q range.
inline std::vector<Table2Row> table2(long k_max) {
  if (k_max < 1) throw DomainError("table2: k_max must be >= 1");
  std::vector<Table2Row> rows;
  for (double tau : {2.0, 3.0, 4.0})
    for (long k0 = 1; k0 <= k_max; ++k0)
      for (const QValue& q : {QValue::zero_plus(), QValue::half_plus()}) {
        const BoundResult b = tau_bound(q, k0, tau);
        rows.push_back({tau, k0, q, b.ric_order, b.bound});
      }
  return rows;
}

struct Table3Row {
  long k;
  QValue regime;
  double bound;
};

/// Order-k bounds for k = 2..k_max across the q regimes 0+, exact 1/2,
/// 1/2+ and exact 1.
inline std::vector<Table3Row> table3(long k_max) {
  if (k_max < 3) throw DomainError("table3: k_max must be >= 3");
  std::vector<Table3Row> rows;
  for (long k = 2; k <= k_max; ++k)
    for (const QValue& q : {QValue::zero_plus(), QValue::exact(0.5),
                            QValue::half_plus(), QValue::exact(1.0)})
      rows.push_back({k, q, theorem2_bound(q, k).bound});
  return rows;
}

enum class Figure { pq = 1, cq = 2, g1 = 3, delta2k = 4 };

struct CurveSample {
  QValue q;
  double value;
};

/// Sampled curves: p_q and c_q on [0,1], g(q,1) on [0,1], and the
/// k-uniform order-2k bound on (0,1]. Uniform grid with `samples`
/// subintervals; endpoints evaluate through the limit extensions.
inline std::vector<CurveSample> fig_data(Figure which, int samples = 200) {
  if (samples < 2) throw DomainError("fig_data: need at least 2 samples");
  std::vector<CurveSample> out;
  const int lo = (which == Figure::delta2k) ? 1 : 0;
  for (int i = lo; i <= samples; ++i) {
    const QValue q = (i == 0) ? QValue::zero_plus()
                              : QValue::exact(static_cast<double>(i) / samples);
    double v = 0.0;
    switch (which) {
      case Figure::pq: v = p_q(q); break;
      case Figure::cq: v = c_q(q); break;
      case Figure::g1: v = g_func(q, 1); break;
      case Figure::delta2k: v = tau_bound(q, 1, 2.0, /*k_uniform=*/true).bound; break;
    }
    out.push_back({q, v});
  }
  return out;
}

}  // namespace lqcs
