#include "gausseig/sturm1d.hpp"

#include <cmath>
#include <numbers>

#include "gausseig/errors.hpp"
#include "gausseig/measure.hpp"
#include "gausseig/parallel.hpp"
#include "gausseig/special.hpp"

namespace gausseig {
namespace {

using detail::PruferShooter;
using detail::StartState;

struct Span {
  double lo, hi;
};

// Half-lines end at the tail cutoff, or one unit past the finite end when that lies beyond it.
Span truncated(const Interval1D& iv, double trunc_weight) {
  const double T = tail_cutoff(trunc_weight);
  return {iv.left_finite() ? iv.a : std::min(-T, iv.b - 1.0), iv.right_finite() ? iv.b : std::max(T, iv.a + 1.0)};
}

StartState start_neumann(const void*, double, double kappa) { return {0.5 * std::numbers::pi, std::log(kappa)}; }
StartState start_dirichlet(const void*, double, double) { return {0.0, 0.0}; }

// Refinement width: never looser than the caller asks, tight enough that the
// sampled boundary condition is met to ~1e-9 after normalization.
double refine_width(double tol) { return std::min(tol, 1e-11); }

void validate(const Interval1D& iv, int count, double tol) {
  if (count < 1) throw DomainError("eig1d: count must be at least 1");
  if (!(tol > 0.0)) throw DomainError("eig1d: tol must be positive");
  if (!(gauss_interval_mass(iv.a, iv.b) > 0.0)) throw DomainError("eig1d: interval has no Gaussian mass");
}

PruferShooter make_shooter(const Span& s, Boundary bc, const SolverOptions& opt) {
  return {detail::PruferModel{}, s.lo, s.hi, bc, bc == Boundary::neumann ? start_neumann : start_dirichlet, nullptr,
          opt.ode};
}

EigenResult constant_mode(const Span& s, const Interval1D& iv, int samples) {
  const Eigen::VectorXd grid = linspace(samples, s.lo, s.hi);
  const double c = 1.0 / std::sqrt(gauss_interval_mass(iv.a, iv.b));
  EigenResult r;
  r.value = 0.0;
  r.eigenfunction = SampledFunction(grid, Eigen::VectorXd::Constant(samples, c), Eigen::VectorXd::Zero(samples));
  return r;
}

}  // namespace

std::vector<EigenResult> eig1d(const Interval1D& iv, Boundary bc, int count, double tol, const SolverOptions& opt) {
  validate(iv, count, tol);
  if (opt.samples < 4) throw DomainError("eig1d: need at least 4 samples");
  const Span s = truncated(iv, opt.trunc_weight);
  const PruferShooter shooter = make_shooter(s, bc, opt);
  const Eigen::VectorXd grid = linspace(opt.samples, s.lo, s.hi);

  std::vector<EigenResult> out;
  double lower = 0.0;
  for (int n = 0; n < count; ++n) {
    if (bc == Boundary::neumann && n == 0) {
      out.push_back(constant_mode(s, iv, opt.samples));
      continue;
    }
    const auto root = shooter.eigenvalue(n, lower, refine_width(tol));
    lower = root.value;

    const auto ph = shooter.sample(root.value, grid, 0.0);
    const double kappa = shooter.kappa(root.value);
    const double shift = ph.log_rho.maxCoeff();
    Eigen::VectorXd f(grid.size()), df(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double rho = std::exp(ph.log_rho[i] - shift);
      f[i] = rho * std::sin(ph.theta[i]) / kappa;
      df[i] = rho * std::cos(ph.theta[i]);
    }
    SampledFunction raw(grid, f, df);
    const double norm2 = integrate_on_grid(grid, s.lo, s.hi, [&](double x) {
      const double v = raw.value_at(x);
      return v * v * normal_pdf(x);
    });

    EigenResult r;
    r.value = root.value;
    r.bracket = root.bracket;
    r.eigenfunction = raw.scaled(1.0 / std::sqrt(norm2));
    r.node_locations = detail::phase_nodes(grid, ph.theta);
    for (double& x : r.node_locations) x = r.eigenfunction.root_in_cell(x);
    r.nodes = static_cast<int>(r.node_locations.size());
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> eig1d_values(const Interval1D& iv, Boundary bc, int count, double tol,
                                 const SolverOptions& opt) {
  validate(iv, count, tol);
  const Span s = truncated(iv, opt.trunc_weight);
  const PruferShooter shooter = make_shooter(s, bc, opt);
  std::vector<double> out;
  double lower = 0.0;
  for (int n = 0; n < count; ++n) {
    if (bc == Boundary::neumann && n == 0) {
      out.push_back(0.0);
      continue;
    }
    lower = shooter.eigenvalue(n, lower, refine_width(tol)).value;
    out.push_back(lower);
  }
  return out;
}

double mu1_interval(const Interval1D& iv, double tol, const SolverOptions& opt) {
  return eig1d_values(iv, Boundary::neumann, 2, tol, opt)[1];
}

double lambda1_interval(const Interval1D& iv, double tol, const SolverOptions& opt) {
  return eig1d_values(iv, Boundary::dirichlet, 1, tol, opt)[0];
}

double neumann_dirichlet_gap(const Interval1D& iv, double tol, const SolverOptions& opt) {
  return mu1_interval(iv, tol, opt) - lambda1_interval(iv, tol, opt);
}

std::vector<SlidePoint> slide_profile(double L, const std::vector<double>& a_grid, double tol,
                                      const SolverOptions& opt) {
  if (!(L > 0.0 && L < 1.0)) throw DomainError("slide_profile: L must lie in (0, 1)");
  if (!std::is_sorted(a_grid.begin(), a_grid.end())) throw PreconditionError("slide_profile: grid must be sorted");
  SolverOptions inner = opt;
  inner.workers = 1;
  return parallel_map(
      a_grid,
      [&](double a) {
        const double b = b_of_a(a, L);
        return SlidePoint{a, b, mu1_interval(Interval1D(a, b), tol, inner)};
      },
      opt.workers);
}

double rayleigh(const SampledFunction& u, const Interval1D& iv, MeanCheck check, double mean_tol) {
  const double lo = std::max(iv.a, u.front()), hi = std::min(iv.b, u.back());
  if (!(hi > lo)) throw DomainError("rayleigh: samples do not overlap the interval");
  const auto& g = u.grid();
  const double num = integrate_on_grid(g, lo, hi, [&](double x) {
    const double d = u.derivative_at(x);
    return d * d * normal_pdf(x);
  });
  const double den = integrate_on_grid(g, lo, hi, [&](double x) {
    const double v = u.value_at(x);
    return v * v * normal_pdf(x);
  });
  if (!(den > 0.0)) throw DomainError("rayleigh: zero norm");
  if (check == MeanCheck::required) {
    const double mean = integrate_on_grid(g, lo, hi, [&](double x) { return u.value_at(x) * normal_pdf(x); });
    if (std::abs(mean) > mean_tol * std::sqrt(den)) {
      throw PreconditionError("rayleigh: test function does not have Gaussian mean zero");
    }
  }
  return num / den;
}

ShapeDerivative shape_derivative_1d(const Interval1D& iv, double tol, const SolverOptions& opt) {
  if (!iv.bounded()) throw DomainError("shape_derivative_1d: both endpoints must be finite");
  const double L = gauss_interval_mass(iv.a, iv.b);
  const auto modes = eig1d(iv, Boundary::neumann, 2, tol, opt);
  const auto& u = modes[1].eigenfunction;
  const double ua = u.values()[0], ub = u.values()[u.size() - 1];
  const double jump = modes[1].value * (ua * ua - ub * ub);

  constexpr double h = 1e-3;
  auto f = [&](double a) { return mu1_interval(Interval1D(a, b_of_a(a, L)), tol, opt); };
  const double fd = (f(iv.a + h) - f(iv.a - h)) / (2.0 * h);
  return {jump * normal_pdf(iv.a), fd, jump * std::exp(-0.5 * iv.a * iv.a)};
}

}  // namespace gausseig
