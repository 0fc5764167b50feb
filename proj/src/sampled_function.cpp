#include "gausseig/sampled_function.hpp"

#include <algorithm>
#include <cmath>

#include "gausseig/errors.hpp"

namespace gausseig {
namespace {

Eigen::Index locate_in(const Eigen::VectorXd& x, double t) {
  const auto n = x.size();
  const double* begin = x.data();
  const double* it = std::upper_bound(begin, begin + n, t);
  Eigen::Index i = static_cast<Eigen::Index>(it - begin) - 1;
  return std::clamp<Eigen::Index>(i, 0, n - 2);
}

// Derivative at x[0] of the cubic through the first four points (Lagrange form).
double end_slope(const double* x, const double* y) {
  double s = 0.0;
  for (int j = 0; j < 4; ++j) {
    // d/dt of the j-th Lagrange basis polynomial at t = x[0]
    double deriv = 0.0;
    double denom = 1.0;
    for (int m = 0; m < 4; ++m) {
      if (m == j) continue;
      denom *= x[j] - x[m];
    }
    for (int skip = 0; skip < 4; ++skip) {
      if (skip == j) continue;
      double prod = 1.0;
      for (int m = 0; m < 4; ++m) {
        if (m == j || m == skip) continue;
        prod *= x[0] - x[m];
      }
      deriv += prod;
    }
    s += y[j] * deriv / denom;
  }
  return s;
}

}  // namespace

CubicSpline::CubicSpline(Eigen::VectorXd x, Eigen::VectorXd y) : x_(std::move(x)), y_(std::move(y)) {
  const auto n = x_.size();
  if (n < 2 || y_.size() != n) throw DomainError("CubicSpline: need matching samples, at least two");
  m_ = Eigen::VectorXd::Zero(n);
  if (n < 4) return;  // piecewise linear fallback

  Eigen::VectorXd xr = x_.reverse(), yr = y_.reverse();
  const double s0 = end_slope(x_.data(), y_.data());
  const double sn = end_slope(xr.data(), yr.data());

  // Clamped spline: tridiagonal system for the knot second derivatives.
  Eigen::VectorXd sub(n), diag(n), sup(n), rhs(n);
  const double h0 = x_[1] - x_[0];
  diag[0] = h0 / 3.0;
  sup[0] = h0 / 6.0;
  rhs[0] = (y_[1] - y_[0]) / h0 - s0;
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    const double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
    sub[i] = hl / 6.0;
    diag[i] = (hl + hr) / 3.0;
    sup[i] = hr / 6.0;
    rhs[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
  }
  const double hn = x_[n - 1] - x_[n - 2];
  sub[n - 1] = hn / 6.0;
  diag[n - 1] = hn / 3.0;
  rhs[n - 1] = sn - (y_[n - 1] - y_[n - 2]) / hn;

  for (Eigen::Index i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
}

double CubicSpline::operator()(double t) const {
  const auto i = locate_in(x_, t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double t) const {
  const auto i = locate_in(x_, t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h + ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

SampledFunction::SampledFunction(Eigen::VectorXd grid, Eigen::VectorXd values,
                                 std::optional<Eigen::VectorXd> derivatives)
    : grid_(std::move(grid)), values_(std::move(values)), derivatives_(std::move(derivatives)) {
  if (grid_.size() < 2 || values_.size() != grid_.size()) {
    throw DomainError("SampledFunction: grid and values must match and hold at least two samples");
  }
  if (derivatives_ && derivatives_->size() != grid_.size()) {
    throw DomainError("SampledFunction: derivative samples must match the grid");
  }
  for (Eigen::Index i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i]) || (i > 0 && !(grid_[i] > grid_[i - 1]))) {
      throw DomainError("SampledFunction: grid must be finite and strictly increasing");
    }
  }
  value_spline_ = CubicSpline(grid_, values_);
  if (derivatives_) derivative_spline_ = CubicSpline(grid_, *derivatives_);
}

Eigen::Index SampledFunction::locate(double x) const { return locate_in(grid_, x); }

double SampledFunction::value_at(double x) const {
  if (!derivatives_) return value_spline_(x);
  const auto i = locate(x);
  const double h = grid_[i + 1] - grid_[i];
  const double s = (x - grid_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const auto& d = *derivatives_;
  return (2 * s3 - 3 * s2 + 1) * values_[i] + (s3 - 2 * s2 + s) * h * d[i] + (-2 * s3 + 3 * s2) * values_[i + 1] +
         (s3 - s2) * h * d[i + 1];
}

double SampledFunction::derivative_at(double x) const {
  return derivatives_ ? derivative_spline_(x) : value_spline_.derivative(x);
}

SampledFunction SampledFunction::scaled(double factor) const {
  std::optional<Eigen::VectorXd> d;
  if (derivatives_) d = factor * *derivatives_;
  return {grid_, factor * values_, std::move(d)};
}

double SampledFunction::root_in_cell(double guess) const {
  const auto i = locate(guess);
  double lo = grid_[i], hi = grid_[i + 1];
  double flo = value_at(lo);
  if (flo * value_at(hi) > 0.0) return guess;
  for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = value_at(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gausseig
