#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "gausseig/bounds.hpp"
#include "gausseig/grid2d.hpp"
#include "gausseig/sampled_function.hpp"

namespace gausseig {

/// Extension of the ball eigenprofile w past R and the densities of the Weinberger test functions.
struct TestProfile {
  int N = 2;
  double R = 1.0;
  double mu1_ball = 0.0;
  SampledFunction w;  // k = 1 radial profile on [0, R], unit norm

  /// G(r) = w(r) for r < R, w(R) beyond.
  double G(double r) const;
  double dG(double r) const;
  /// N(r) = G'(r)^2 + (N - 1) G(r)^2 / r^2, with its limit N w'(0)^2 at r = 0.
  double Ndens(double r) const;
  /// D(r) = G(r)^2.
  double Ddens(double r) const;
};

/// Profile for the ball B_R in R^N. Throws SolverError when G fails to be nondecreasing or
/// N(r) fails to decrease strictly on a check grid over [0, R + 2].
TestProfile build_profile(int N, double R, double tol);

enum class DomainKind { disk, rectangle, polar, mask };

/// A planar domain symmetric about the origin.
class SymmetricDomain2D {
 public:
  static SymmetricDomain2D disk(double radius);
  /// (-half_x, half_x) x (-half_y, half_y).
  static SymmetricDomain2D rectangle(double half_x, double half_y);
  /// {r < rho(theta)} with rho(theta + pi) = rho(theta); kinks are angles in [0, 2 pi) where rho is not smooth.
  static SymmetricDomain2D polar(std::function<double(double)> rho, std::vector<double> kinks = {});
  /// Union of the active cells; the grid must be centered at the origin.
  static SymmetricDomain2D mask(MaskedGrid2D grid);

  DomainKind kind() const { return kind_; }
  double measure() const { return measure_; }
  double max_radius() const;
  double disk_radius() const { return a_; }
  std::array<double, 2> half_sides() const { return {a_, b_}; }
  double rho(double theta) const;
  bool contains(double x, double y) const;
  const MaskedGrid2D& grid() const { return grid_; }

  /// int over the domain of f(|x|) dgamma_2; f may have a kink at radius kink_r.
  double integrate_radial(const std::function<double(double)>& f, double kink_r) const;
  /// int over the domain of g(|x|) x_i / |x| dgamma_2 for i = 1, 2.
  std::array<double, 2> first_moments(const std::function<double(double)>& g, double kink_r) const;

  /// Midpoint mask on a centered grid with `cells` cells across the bounding square; masks return themselves.
  MaskedGrid2D to_mask(int cells) const;

 private:
  SymmetricDomain2D() = default;
  /// int over theta of angular(theta) * piece(rho(theta)), Gauss-Legendre between kinks.
  double polar_integral(const std::function<double(double)>& angular,
                        const std::function<double(double)>& piece) const;
  double mask_integral(const std::function<double(double, double)>& f) const;

  DomainKind kind_ = DomainKind::disk;
  double a_ = 0.0, b_ = 0.0;
  std::function<double(double)> rho_;
  std::vector<double> kinks_;
  MaskedGrid2D grid_;
  double measure_ = 0.0;
};

/// Member of a family, increasing in its parameter on [lo, hi], whose Gaussian measure is m.
/// Mask families move in steps, so their measure is only approached.
SymmetricDomain2D fit_measure(const std::function<SymmetricDomain2D(double)>& family, double m, double lo, double hi);

/// int N(|x|) dgamma / int D(|x|) dgamma over omega.
/// Throws PreconditionError unless omega has the measure of B_R to 1e-8.
double weinberger_bound(const SymmetricDomain2D& omega, const TestProfile& profile);

struct WeinbergerReport {
  double measure = 0.0;
  double R = 0.0;
  double mu1_domain = 0.0;
  double bound = 0.0;
  double mu1_ball = 0.0;
  double N_domain = 0.0, N_ball = 0.0;
  double D_domain = 0.0, D_ball = 0.0;
  std::array<double, 2> moments{};  // int P_i dgamma
  bool equality = false;             // bound within 1e-9 of mu1_ball
  std::vector<ChainLink> links;
  bool ok = false;
};

struct WeinbergerOptions {
  double tol = 1e-10;
  int mask_cells = 160;         // cells across the bounding square when a mask solve is needed
  double discretization = 0.02;  // relative slack on mu1(omega) <= bound
};

/// mu1(omega) <= bound <= mu1(B_R), the two rearrangement inequalities behind the middle step,
/// and the vanishing first moments of P_i.
WeinbergerReport szego_weinberger_check(const SymmetricDomain2D& omega, const WeinbergerOptions& opt = {});

}  // namespace gausseig
