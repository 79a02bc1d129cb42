#pragma once

#include <cstdio>

#include "lqcs/common.hpp"

namespace lqcs {

/// A validated exponent q in [0,1] with one-sided limit semantics at the
/// three special points 0, 1/2 and 1. The scalar bound functions are
/// discontinuous (through the ceiling term) as q crosses 1/2, and are
/// defined at 0 and 1 only by their limits, so "q = 1/2 from above" is a
/// distinct value from "q = 1/2".
class QValue {
 public:
  enum class Mode { exact, zero_plus, half_plus, one_minus };

  static QValue exact(double q) {
    if (!(q >= 0.0 && q <= 1.0))
      throw DomainError("q must lie in [0,1], got " + std::to_string(q));
    return QValue(q, Mode::exact);
  }
  static QValue zero_plus() { return QValue(0.0, Mode::zero_plus); }
  static QValue half_plus() { return QValue(0.5, Mode::half_plus); }
  static QValue one_minus() { return QValue(1.0, Mode::one_minus); }

  double value() const { return q_; }
  Mode mode() const { return mode_; }

  // q = 0 and q = 1 have no exact evaluation of their own; every dependent
  // function is defined there by the one-sided limit, so exact endpoints
  // collapse onto the limit semantics.
  bool at_zero() const { return mode_ == Mode::zero_plus || q_ == 0.0; }
  bool at_one() const { return mode_ == Mode::one_minus || q_ == 1.0; }
  bool above_half() const { return mode_ == Mode::half_plus; }

  bool operator==(const QValue& o) const {
    return q_ == o.q_ && mode_ == o.mode_;
  }

  std::string label() const {
    switch (mode_) {
      case Mode::zero_plus: return "0+";
      case Mode::half_plus: return "1/2+";
      case Mode::one_minus: return "1-";
      case Mode::exact: break;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%.6g", q_);
    return buf;
  }

 private:
  QValue(double q, Mode m) : q_(q), mode_(m) {}
  double q_;
  Mode mode_;
};

}  // namespace lqcs
