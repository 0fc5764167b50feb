#pragma once

#include <Eigen/Core>

#include <vector>

#include "gausseig/ode.hpp"

namespace gausseig {

enum class Boundary { neumann, dirichlet };

namespace detail {

/// Second-order problem f'' + (c/x - x) f' + (mu - p/x^2) f = 0 on (x_start, x_end).
///
/// c = p = 0 is the one-dimensional Hermite operator; c = N-1, p = k(k+N-2) is
/// the k-th angular branch of the ball. The modified Pruefer angle
/// theta = atan2(kappa f, f') carries the node count: it crosses each multiple
/// of pi upward exactly once.
struct PruferModel {
  double drift_over_x = 0.0;
  double potential = 0.0;

  double drift(double x) const { return drift_over_x == 0.0 ? -x : drift_over_x / x - x; }
  double pot(double x) const { return potential == 0.0 ? 0.0 : potential / (x * x); }
};

/// Starting data at x_start: the value/derivative direction of the admissible solution.
struct StartState {
  double theta;
  double log_rho;
};

struct PhaseSamples {
  Eigen::VectorXd theta;
  Eigen::VectorXd log_rho;
};

class PruferShooter {
 public:
  /// `start(mu, kappa)` yields the initial angle and log-amplitude for the left condition.
  using StartFn = StartState (*)(const void* ctx, double mu, double kappa);

  PruferShooter(PruferModel model, double x_start, double x_end, Boundary end_bc, StartFn start,
                const void* start_ctx, OdeTolerances tol);

  double kappa(double mu) const;

  /// Pruefer angle at x_end for spectral parameter mu.
  double end_phase(double mu) const;

  /// Angle and log-amplitude at each abscissa of `grid` (ascending, inside [x_start, x_end]).
  ///
  /// Samples left of `x_match` come from the forward solve, the rest from a
  /// backward solve started at x_end; the two are glued continuously at x_match.
  /// Integrating each piece toward the region where the e^{x^2/2}-type solution
  /// decays keeps the tails accurate.
  PhaseSamples sample(double mu, const Eigen::VectorXd& grid, double x_match) const;

  /// Phase the n-th eigenfunction (0-based) reaches at x_end.
  double target_phase(int n) const;

  struct Root {
    double value;
    double bracket;
  };

  /// n-th eigenvalue by phase bracketing and Illinois refinement to bracket width <= tol.
  Root eigenvalue(int n, double lower, double tol) const;

 private:
  PruferModel model_;
  double x_start_, x_end_;
  Boundary end_bc_;
  StartFn start_;
  const void* start_ctx_;
  OdeTolerances tol_;
};

/// Interior zeros of the sampled eigenfunction: where theta crosses a multiple of pi.
std::vector<double> phase_nodes(const Eigen::VectorXd& grid, const Eigen::VectorXd& theta);

}  // namespace detail
}  // namespace gausseig
