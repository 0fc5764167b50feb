#pragma once

#include <vector>

#include "gausseig/interval.hpp"
#include "gausseig/sturm1d.hpp"

namespace gausseig {

/// f'' + f'((N-1)/r - r) + mu f - k(k+N-2) f / r^2 = 0 on (0, R).
/// Regular at the origin: f'(0) = 0 for k = 0, f(0) = 0 for k >= 1.
struct RadialProblem {
  int N = 2;
  int k = 0;
  double R = 1.0;  // may be kInf
  Boundary bc = Boundary::neumann;
};

/// Radius actually integrated to: R itself, or the truncation radius when R = inf.
double radial_outer_radius(const RadialProblem& p, const SolverOptions& opt = {});

/// First `count` eigenvalues of the branch. Eigenfunctions are sampled on [0, R] (r = 0 included)
/// and normalized so that N omega_N (2 pi)^{-N/2} int_0^R f^2 r^{N-1} e^{-r^2/2} dr = 1.
/// For k = 0 Neumann the list starts with mu = 0; node_locations of entry 1 holds r_0, the zero of g_1.
std::vector<EigenResult> radial_eigs(const RadialProblem& p, int count, double tol, const SolverOptions& opt = {});

std::vector<double> radial_eig_values(const RadialProblem& p, int count, double tol,
                                      const SolverOptions& opt = {});

/// First nontrivial Neumann eigenvalue of the radial branch, tau_1(R).
double tau1(int N, double R, double tol, const SolverOptions& opt = {});

/// First Neumann eigenvalue of the k = 1 branch, nu_1(R).
double nu1(int N, double R, double tol, const SolverOptions& opt = {});

/// Zero r_0 of the first nontrivial radial Neumann eigenfunction g_1.
double g1_node(int N, double R, double tol, const SolverOptions& opt = {});

struct BallMu1 {
  double mu1 = 0.0;         // = nu_1(R)
  SampledFunction w;        // k = 1 profile, nonnegative and nondecreasing, unit norm
  double tau1 = 0.0;        // first nontrivial radial eigenvalue
  double k2_first = 0.0;    // first eigenvalue of the k = 2 branch
  double rayleigh = 0.0;    // int (w'^2 + (N-1) w^2 / r^2) dgamma / int w^2 dgamma
};

/// mu_1 of the ball B_R in R^N. Throws SolverError if nu_1 is not strictly below
/// both tau_1 and the k = 2 branch.
BallMu1 mu1_ball(int N, double R, double tol, const SolverOptions& opt = {});

struct RadialShapeDerivative {
  double formula;  // -N omega_N (2 pi)^{-N/2} mu u(R)^2 R^{N-1} e^{-R^2/2}
  double fd;       // central difference in R, step 1e-3
  double value;    // the eigenvalue itself
};

/// Derivative in R of the k_index-th radial (k = 0) Neumann eigenvalue of B_R.
RadialShapeDerivative shape_derivative_radial(int N, double R, int k_index, double tol,
                                              const SolverOptions& opt = {});

}  // namespace gausseig
