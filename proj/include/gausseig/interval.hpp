#pragma once

#include <cmath>
#include <limits>

#include "gausseig/errors.hpp"

namespace gausseig {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// An open interval (a, b) of the extended real line; either end may be infinite.
struct Interval1D {
  double a = -kInf;
  double b = kInf;

  Interval1D() = default;
  Interval1D(double lo, double hi) : a(lo), b(hi) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
      throw DomainError("Interval1D requires a < b");
    }
  }

  static Interval1D real_line() { return {}; }

  bool left_finite() const { return std::isfinite(a); }
  bool right_finite() const { return std::isfinite(b); }
  bool bounded() const { return left_finite() && right_finite(); }
};

}  // namespace gausseig
