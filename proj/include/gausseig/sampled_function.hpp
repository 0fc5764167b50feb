#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <optional>

#include "gausseig/special.hpp"

namespace gausseig {

/// Cubic spline through (x_i, y_i) with end slopes taken from one-sided
/// four-point differences, so the interpolation error stays O(h^4) up to the ends.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(Eigen::VectorXd x, Eigen::VectorXd y);

  double operator()(double t) const;
  double derivative(double t) const;

 private:
  Eigen::VectorXd x_, y_, m_;  // m_ = second derivatives at the knots
};

/// Samples of a function on a strictly increasing grid, optionally with derivative samples.
///
/// With derivative samples present, values are interpolated by cubic Hermite
/// pieces and derivatives by a spline through the derivative samples;
/// otherwise a single spline serves both.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(Eigen::VectorXd grid, Eigen::VectorXd values,
                  std::optional<Eigen::VectorXd> derivatives = std::nullopt);

  const Eigen::VectorXd& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  const std::optional<Eigen::VectorXd>& derivatives() const { return derivatives_; }
  Eigen::Index size() const { return grid_.size(); }
  double front() const { return grid_[0]; }
  double back() const { return grid_[grid_.size() - 1]; }

  double value_at(double x) const;
  double derivative_at(double x) const;

  /// Index i with grid[i] <= x < grid[i+1], clamped to the valid cell range.
  Eigen::Index locate(double x) const;

  SampledFunction scaled(double factor) const;

  /// Zero of the interpolant in the grid cell containing `guess`, by bisection;
  /// `guess` itself when the cell has no sign change.
  double root_in_cell(double guess) const;

 private:
  Eigen::VectorXd grid_, values_;
  std::optional<Eigen::VectorXd> derivatives_;
  CubicSpline value_spline_, derivative_spline_;
};

/// Composite Gauss-Legendre integral of g over [lo, hi], one panel per grid cell.
/// Exact up to rounding for piecewise polynomials of degree < 2 * order on the grid.
template <typename G>
double integrate_on_grid(const Eigen::VectorXd& grid, double lo, double hi, G&& g, int order = 6) {
  const auto& rule = gauss_legendre(order);
  double total = 0.0;
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    const double a = std::max(lo, grid[i - 1]), b = std::min(hi, grid[i]);
    if (!(b > a)) continue;
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (int j = 0; j < order; ++j) s += rule.weights[j] * g(c + r * rule.nodes[j]);
    total += r * s;
  }
  return total;
}

/// n equispaced points from lo to hi inclusive.
inline Eigen::VectorXd linspace(Eigen::Index n, double lo, double hi) {
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

}  // namespace gausseig
