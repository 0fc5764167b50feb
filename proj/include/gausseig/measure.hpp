#pragma once

#include <variant>

#include "gausseig/interval.hpp"

namespace gausseig {

/// Centered Euclidean ball B_R in R^N.
struct Ball {
  int dim = 2;
  double radius = 1.0;
};

/// Half-space {x in R^N : x_1 > threshold}.
struct HalfSpace {
  int dim = 2;
  double threshold = 0.0;
};

/// Axis-aligned rectangle in the plane.
struct Rectangle {
  Interval1D x;
  Interval1D y;
};

using Domain = std::variant<Interval1D, Ball, HalfSpace, Rectangle>;

/// Volume of the unit ball, pi^{N/2} / Gamma(N/2 + 1).
double unit_ball_volume(int dim);

/// N omega_N / (2 pi)^{N/2}: converts int_0^R (.) r^{N-1} e^{-r^2/2} dr into a gamma_N integral.
double radial_measure_constant(int dim);

/// int_0^R e^{-s^2/2} s^power ds by quadrature (R may be +inf).
double gaussian_moment(int power, double R);

double gauss_measure(const Domain& d);
double gauss_perimeter(const Domain& d);

/// Right endpoint keeping gamma_1((a, b)) = L; a may be -inf.
double b_of_a(double a, double L);

/// Half-space orthogonal to x_1 with Gaussian measure m.
Domain half_space_rearranged(double m, int dim = 2);

/// Radius of the centered ball of Gaussian measure m in R^N.
double ball_radius_for_measure(int dim, double m);

}  // namespace gausseig
