#include "gausseig/measure.hpp"

#include <array>
#include <numbers>

#include "gausseig/special.hpp"

namespace gausseig {
namespace {

void validate(const Ball& b) {
  if (b.dim < 1) throw DomainError("Ball: dimension must be >= 1");
  if (!(b.radius > 0.0)) throw DomainError("Ball: radius must be > 0");
}

double interval_perimeter(const Interval1D& iv) {
  double p = 0.0;
  if (iv.left_finite()) p += normal_pdf(iv.a);
  if (iv.right_finite()) p += normal_pdf(iv.b);
  return p;
}

}  // namespace

double unit_ball_volume(int dim) {
  if (dim < 1) throw DomainError("unit_ball_volume: dimension must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double radial_measure_constant(int dim) {
  return dim * unit_ball_volume(dim) / std::pow(2.0 * std::numbers::pi, 0.5 * dim);
}

double gaussian_moment(int power, double R) {
  if (power < 0) throw DomainError("gaussian_moment: negative power");
  if (!(R >= 0.0)) throw DomainError("gaussian_moment: negative radius");
  if (R == 0.0) return 0.0;
  if (std::isinf(R)) return std::pow(2.0, 0.5 * (power - 1)) * std::tgamma(0.5 * (power + 1));
  QuadOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-14;
  const std::array<double, 2> pts{0.0, R};
  return quad([power](double s) { return std::exp(-0.5 * s * s) * std::pow(s, power); }, pts, opt);
}

double gauss_measure(const Domain& d) {
  return std::visit(
      [](const auto& dom) -> double {
        using T = std::decay_t<decltype(dom)>;
        if constexpr (std::is_same_v<T, Interval1D>) {
          return gauss_interval_mass(dom.a, dom.b);
        } else if constexpr (std::is_same_v<T, Ball>) {
          validate(dom);
          return radial_measure_constant(dom.dim) * gaussian_moment(dom.dim - 1, dom.radius);
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return phi_complementary(dom.threshold);
        } else {
          return gauss_interval_mass(dom.x.a, dom.x.b) * gauss_interval_mass(dom.y.a, dom.y.b);
        }
      },
      d);
}

double gauss_perimeter(const Domain& d) {
  return std::visit(
      [](const auto& dom) -> double {
        using T = std::decay_t<decltype(dom)>;
        if constexpr (std::is_same_v<T, Interval1D>) {
          return interval_perimeter(dom);
        } else if constexpr (std::is_same_v<T, Ball>) {
          validate(dom);
          const double R = dom.radius;
          return radial_measure_constant(dom.dim) * std::pow(R, dom.dim - 1) * std::exp(-0.5 * R * R);
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return normal_pdf(dom.threshold);
        } else {
          return interval_perimeter(dom.x) * gauss_interval_mass(dom.y.a, dom.y.b) +
                 gauss_interval_mass(dom.x.a, dom.x.b) * interval_perimeter(dom.y);
        }
      },
      d);
}

double b_of_a(double a, double L) {
  if (!(L > 0.0 && L < 1.0)) throw DomainError("b_of_a: L must lie in (0, 1)");
  if (std::isnan(a) || a == kInf) throw DomainError("b_of_a: a must be finite or -inf");
  const double arg = 2.0 * L + erf(a / std::numbers::sqrt2);
  if (!(arg > -1.0 && arg < 1.0)) throw DomainError("b_of_a: no finite right endpoint for this a");
  return std::numbers::sqrt2 * erfinv(arg);
}

Domain half_space_rearranged(double m, int dim) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("half_space_rearranged: m must lie in (0, 1)");
  return HalfSpace{dim, phi_inverse(m)};
}

double ball_radius_for_measure(int dim, double m) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("ball_radius_for_measure: m must lie in (0, 1)");
  if (dim == 2) return std::sqrt(-2.0 * std::log1p(-m));
  double lo = 0.0, hi = 1.0;
  while (gauss_measure(Ball{dim, hi}) < m) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gauss_measure(Ball{dim, mid}) < m ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gausseig
