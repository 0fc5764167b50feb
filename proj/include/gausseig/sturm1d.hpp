#pragma once

#include <vector>

#include "gausseig/detail/prufer.hpp"
#include "gausseig/interval.hpp"
#include "gausseig/ode.hpp"
#include "gausseig/sampled_function.hpp"

namespace gausseig {

struct SolverOptions {
  double trunc_weight = 1e-18;  // half-lines end where exp(-x^2/2) drops below this
  int samples = 2001;           // eigenfunction samples per solve
  OdeTolerances ode{1e-13, 1e-12, 2'000'000};
  unsigned workers = 1;  // for sweeps
  double frobenius_start = 1e-4;  // radial solves start the series solution here
  double radial_truncation = 0.0;  // R = inf replaced by this radius; 0 picks max(12, sqrt(N) + 6)
};

struct EigenResult {
  double value = 0.0;
  SampledFunction eigenfunction;  // unit norm in L^2 of the Gaussian measure, positive at the left end
  int nodes = 0;
  double bracket = 0.0;
  std::vector<double> node_locations;
};

/// First `count` eigenvalues of -u'' + x u' = mu u on iv with the given boundary condition.
/// The Neumann list starts at mu_0 = 0 with the constant eigenfunction.
std::vector<EigenResult> eig1d(const Interval1D& iv, Boundary bc, int count, double tol,
                               const SolverOptions& opt = {});

/// Eigenvalues only: skips eigenfunction sampling.
std::vector<double> eig1d_values(const Interval1D& iv, Boundary bc, int count, double tol,
                                 const SolverOptions& opt = {});

/// First nontrivial Neumann eigenvalue mu_1(a, b).
double mu1_interval(const Interval1D& iv, double tol, const SolverOptions& opt = {});

/// First Dirichlet eigenvalue lambda_1(a, b).
double lambda1_interval(const Interval1D& iv, double tol, const SolverOptions& opt = {});

/// mu_1(iv) - lambda_1(iv); equals 1 on every interval.
double neumann_dirichlet_gap(const Interval1D& iv, double tol, const SolverOptions& opt = {});

struct SlidePoint {
  double a;
  double b;
  double mu1;
};

/// mu_1(a, b(a)) along intervals of fixed Gaussian measure L.
std::vector<SlidePoint> slide_profile(double L, const std::vector<double>& a_grid, double tol,
                                      const SolverOptions& opt = {});

enum class MeanCheck { required, skip };

/// int (u')^2 dgamma / int u^2 dgamma over iv, clipped to the sampled range of u.
/// With MeanCheck::required the Gaussian mean of u must vanish relative to its norm.
double rayleigh(const SampledFunction& u, const Interval1D& iv, MeanCheck check = MeanCheck::required,
                double mean_tol = 1e-8);

struct ShapeDerivative {
  double formula;  // mu * phi(a) * (u(a)^2 - u(b)^2), unit-norm u, density phi = e^{-a^2/2}/sqrt(2 pi)
  double fd;       // central difference of mu_1(a + t, b(a + t)) at step 1e-3
  double printed;  // the same expression without the 1/sqrt(2 pi) density factor
};

/// d/dt mu_1(a + t, b(a + t)) at t = 0 with the Gaussian measure of the interval held fixed.
ShapeDerivative shape_derivative_1d(const Interval1D& iv, double tol, const SolverOptions& opt = {});

}  // namespace gausseig
