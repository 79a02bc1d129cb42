#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lqcs {

using Vector = std::vector<double>;

/// Invalid input for an operation (bad parameter range, inconsistent
/// dimensions, zero vector where nonzero required, ...). CLI maps this
/// to exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact-enumeration request exceeds the configured support budget.
/// Enumeration is refused outright instead of silently sampling.
/// CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(double x) { return std::isfinite(x); }

inline void require_finite(const Vector& x, const char* what = "vector") {
  for (double v : x) {
    if (!std::isfinite(v))
      throw DomainError(std::string(what) + " contains a non-finite entry");
  }
}

inline double sq(double x) { return x * x; }

/// Ceiling with an integer snap: a value within 1e-9 (relative) of an
/// integer counts as that integer. Needed so floating evaluations like
/// (1/2)^{-1} * k land on the integer branch they represent.
inline double snapped_ceil(double x, double tol = 1e-9) {
  const double r = std::round(x);
  if (std::abs(x - r) <= tol * std::max(1.0, std::abs(x))) return r;
  return std::ceil(x);
}

inline bool nearly_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

}  // namespace lqcs
