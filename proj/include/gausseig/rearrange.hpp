#pragma once

#include <Eigen/Core>

#include <vector>

#include "gausseig/interval.hpp"
#include "gausseig/sampled_function.hpp"

namespace gausseig {

/// Function samples with the Gaussian mass each sample represents; masses sum to gamma_N(Omega).
struct WeightedSamples {
  Eigen::VectorXd values;
  Eigen::VectorXd weights;
};

/// Each sample of u carries the Gaussian mass of its nearest-sample cell inside iv.
/// The outermost cells reach the ends of iv, which may be infinite.
WeightedSamples weigh_samples(const SampledFunction& u, const Interval1D& iv);

/// Gaussian rearrangements of |u| built by sorting weighted samples (ties in sample order).
class RearrangedFunction {
 public:
  explicit RearrangedFunction(WeightedSamples samples);

  const WeightedSamples& source() const { return source_; }
  double measure() const { return measure_; }

  /// mu(t) = gamma({|u| > t}).
  double distribution(double t) const;
  /// u*(s) = inf{t >= 0 : mu(t) <= s}, s in (0, measure].
  double u_star(double s) const;
  /// u_*(s) = u*(measure - s).
  double u_lowstar(double s) const;
  /// u-star(x) = u*(Phi(x_1)) on the half-space x_1 > threshold().
  double u_gauss(double x1) const;
  /// Phi^{-1}(measure): left edge of the rearranged half-space.
  double threshold() const;

  /// sum |u_i|^p w_i.
  double source_norm(double p) const;
  /// int over the half-space of (u-star)^p dgamma, piece by piece in x_1.
  double rearranged_norm(double p) const;

  /// Values of |u| in decreasing order and the running mass after each.
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

 private:
  WeightedSamples source_;
  double measure_ = 0.0;
  std::vector<double> levels_, cumulative_;
};

RearrangedFunction rearrange(const WeightedSamples& samples);
RearrangedFunction rearrange(const SampledFunction& u, const Interval1D& iv);

struct HardyLittlewood {
  double lower;   // int u* v_* ds
  double middle;  // int |u v| dgamma
  double upper;   // int u* v* ds
  double lower_slack;
  double upper_slack;
};

/// Both inequalities of Hardy-Littlewood on a common weighted grid.
HardyLittlewood hardy_littlewood_gap(const WeightedSamples& u, const WeightedSamples& v);

struct PolyaSzego {
  double direct;      // int |u'|^2 dgamma over the interval
  double rearranged;  // int |(u-star)'|^2 dgamma over the half-line
  double gap;
};

/// Dirichlet energies of the piecewise-linear interpolant of u and of its Gaussian rearrangement.
/// u must be nonnegative and vanish at finite ends of iv; beyond the last sample toward an
/// infinite end u is continued as a constant.
PolyaSzego polya_szego_gap(const SampledFunction& u, const Interval1D& iv, double tol = 1e-12);

}  // namespace gausseig
