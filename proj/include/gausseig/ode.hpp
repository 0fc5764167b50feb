#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

#include "gausseig/errors.hpp"

namespace gausseig {

struct OdeTolerances {
  double rtol = 1e-12;
  double atol = 1e-12;
  long max_steps = 2'000'000;
};

/// Adaptive Dormand-Prince 5(4) stepper for y' = f(x, y) with a fixed-size state.
///
/// `advance(x_target)` integrates from the current abscissa and lands exactly on
/// the target, keeping the step size between calls so repeated sampling stays cheap.
template <int Dim, typename Rhs>
class DormandPrince {
 public:
  using State = Eigen::Matrix<double, Dim, 1>;

  DormandPrince(Rhs rhs, double x0, const State& y0, OdeTolerances tol = {})
      : rhs_(std::move(rhs)), x_(x0), y_(y0), tol_(tol) {}

  double x() const { return x_; }
  const State& y() const { return y_; }
  long steps() const { return steps_; }

  const State& advance(double x_target) {
    const double dir = x_target >= x_ ? 1.0 : -1.0;
    if (h_ == 0.0) h_ = dir * std::max(1e-4, 1e-3 * std::abs(x_target - x_));
    h_ = dir * std::abs(h_);
    State k1 = rhs_(x_, y_);
    while (dir * (x_target - x_) > 0.0) {
      bool last = false;
      double h = h_;
      if (dir * (x_ + h - x_target) >= 0.0) {
        h = x_target - x_;
        last = true;
      }
      // Butcher tableau of Dormand & Prince (1980).
      const State k2 = rhs_(x_ + h / 5.0, y_ + h * (k1 / 5.0));
      const State k3 = rhs_(x_ + 3.0 * h / 10.0, y_ + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
      const State k4 = rhs_(x_ + 4.0 * h / 5.0, y_ + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
      const State k5 = rhs_(x_ + 8.0 * h / 9.0,
                            y_ + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3 -
                                      212.0 / 729.0 * k4));
      const State k6 = rhs_(x_ + h, y_ + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 +
                                              49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5));
      const State y5 = y_ + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                                 2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
      const State k7 = rhs_(x_ + h, y5);
      const State err = h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4 -
                             17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * k7);
      const State scale = (tol_.atol + tol_.rtol * y_.cwiseAbs().cwiseMax(y5.cwiseAbs()).array()).matrix();
      const double e = err.cwiseQuotient(scale).cwiseAbs().maxCoeff();

      if (++steps_ > tol_.max_steps) throw SolverError("DormandPrince: step budget exhausted");
      if (!std::isfinite(e)) {
        h_ = 0.25 * h;
        if (std::abs(h_) < 1e-14) throw SolverError("DormandPrince: non-finite state");
        continue;
      }
      const double factor = std::clamp(0.9 * std::pow(std::max(e, 1e-16), -0.2), 0.2, 5.0);
      if (e <= 1.0) {
        x_ = last ? x_target : x_ + h;
        y_ = y5;
        k1 = k7;
        if (!last) h_ = h * factor;
      } else {
        h_ = h * std::max(factor, 0.1);
        if (std::abs(h_) < 1e-15 * std::max(1.0, std::abs(x_))) {
          throw SolverError("DormandPrince: step size underflow");
        }
      }
    }
    return y_;
  }

 private:
  Rhs rhs_;
  double x_;
  State y_;
  OdeTolerances tol_;
  double h_ = 0.0;
  long steps_ = 0;
};

}  // namespace gausseig
