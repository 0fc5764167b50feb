#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <span>
#include <vector>

#include "gausseig/errors.hpp"

namespace gausseig {

// ---------------------------------------------------------------------------
// Error function family and the Gaussian tail Phi
// ---------------------------------------------------------------------------

inline double erf(double x) { return std::erf(x); }
inline double erfc(double x) { return std::erfc(x); }

/// Inverse error function on (-1, 1); throws DomainError for |p| >= 1.
double erfinv(double p);

/// Inverse complementary error function on (0, 2).
double erfcinv(double q);

/// Standard normal density phi_1(t) = exp(-t^2/2)/sqrt(2 pi).
inline double normal_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

/// Upper Gaussian tail Phi(t) = gamma_1((t, +inf)); Phi(-inf) = 1, Phi(+inf) = 0.
inline double phi_complementary(double t) {
  return 0.5 * std::erfc(t / std::numbers::sqrt2);
}

/// Inverse of phi_complementary on (0, 1).
double phi_inverse(double m);

/// Gaussian measure of (a, b) computed without cancellation in either tail.
double gauss_interval_mass(double a, double b);

/// Abscissa beyond which exp(-t^2/2) drops below `weight`.
inline double tail_cutoff(double weight = 1e-18) {
  return std::sqrt(-2.0 * std::log(weight));
}

// ---------------------------------------------------------------------------
// Probabilists' Hermite polynomials
// ---------------------------------------------------------------------------

/// Monomial coefficients of He_n, lowest degree first.
struct HermitePoly {
  int n = 0;
  Eigen::VectorXd coefficients;

  static HermitePoly of_degree(int n);

  template <typename Scalar>
  Scalar operator()(Scalar t) const {
    Scalar acc(0);
    for (Eigen::Index i = coefficients.size() - 1; i >= 0; --i) acc = acc * t + Scalar(coefficients[i]);
    return acc;
  }
};

template <typename Scalar>
struct HermiteValue {
  Scalar value;
  Scalar derivative;
  Scalar ode_residual;
};

/// He_n(t), He_n'(t) and |He_n'' - t He_n' + n He_n| by the three-term recurrence.
template <typename Scalar>
HermiteValue<Scalar> hermite_eval(int n, Scalar t) {
  if (n < 0) throw DomainError("hermite_eval: negative degree");
  // h[k] holds He_{n-2+k} for k = 0, 1, 2 once the loop finishes.
  std::array<Scalar, 3> h{Scalar(0), Scalar(0), Scalar(1)};
  for (int k = 1; k <= n; ++k) {
    Scalar next = t * h[2] - Scalar(k - 1) * h[1];
    h = {h[1], h[2], next};
  }
  const Scalar value = h[2];
  const Scalar d1 = n >= 1 ? Scalar(n) * h[1] : Scalar(0);
  const Scalar d2 = n >= 2 ? Scalar(n) * Scalar(n - 1) * h[0] : Scalar(0);
  using std::abs;
  return {value, d1, abs(d2 - t * d1 + Scalar(n) * value)};
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 4000;
  double trunc_weight = 1e-18;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
const GaussLegendre& gauss_legendre(int n);

namespace detail {

struct GkSegment {
  double a, b, value, error;
  bool operator<(const GkSegment& o) const { return error < o.error; }
};

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
GkSegment gk15(F& f, double a, double b, int& evals) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = r * kXgk[j];
    const double f1 = f(c - dx), f2 = f(c + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  evals += 15;
  return {a, b, kron * r, std::abs((kron - gauss) * r)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature over consecutive breakpoints.
///
/// Infinite outer endpoints are clipped at the Gaussian tail cutoff, so the
/// integrand is assumed to carry a Gaussian factor there. The result records
/// whether the tolerance was met within the subdivision budget.
template <typename F>
QuadResult quad_adaptive(F&& f, std::span<const double> breakpoints, const QuadOptions& opt = {}) {
  if (breakpoints.size() < 2) throw DomainError("quad: need at least two breakpoints");
  std::vector<double> pts(breakpoints.begin(), breakpoints.end());
  const double cut = tail_cutoff(opt.trunc_weight);
  for (double& p : pts) {
    if (std::isinf(p)) p = p < 0 ? std::min(-cut, pts.back() - 1.0) : std::max(cut, pts.front() + 1.0);
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] < pts[i - 1]) throw DomainError("quad: breakpoints must be nondecreasing");
  }

  std::priority_queue<detail::GkSegment> heap;
  QuadResult res;
  double total = 0.0, err = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] == pts[i - 1]) continue;
    auto s = detail::gk15(f, pts[i - 1], pts[i], res.evaluations);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  int intervals = static_cast<int>(heap.size());
  auto target = [&] { return std::max({opt.abs_tol, opt.rel_tol * std::abs(total), 1e-15 * std::abs(total)}); };
  while (!heap.empty() && err > target() && intervals < opt.max_intervals) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // cannot split further
      heap.push(worst);
      break;
    }
    auto left = detail::gk15(f, worst.a, mid, res.evaluations);
    auto right = detail::gk15(f, mid, worst.b, res.evaluations);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed accumulated rounding from the running updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.error = err;
  res.converged = err <= target();
  return res;
}

/// Integral of f over (a, b); throws QuadratureError with the partial estimate on failure.
template <typename F>
double quad(F&& f, double a, double b, double tol = 1e-10) {
  const std::array<double, 2> pts{a, b};
  QuadOptions opt;
  opt.abs_tol = tol;
  auto r = quad_adaptive(f, pts, opt);
  if (!r.converged) throw QuadratureError("quad: subdivision budget exhausted", r.value, r.error);
  return r.value;
}

template <typename F>
double quad(F&& f, std::span<const double> breakpoints, const QuadOptions& opt) {
  auto r = quad_adaptive(f, breakpoints, opt);
  if (!r.converged) throw QuadratureError("quad: subdivision budget exhausted", r.value, r.error);
  return r.value;
}

}  // namespace gausseig
