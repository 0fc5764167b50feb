#include "gausseig/detail/prufer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gausseig/errors.hpp"

namespace gausseig::detail {
namespace {

using State2 = Eigen::Vector2d;

struct PhaseRhs {
  PruferModel model;
  double mu;
  double kappa;

  State2 operator()(double x, const State2& y) const {
    const double s = std::sin(y[0]), c = std::cos(y[0]);
    const double d = model.drift(x);
    const double q = mu - model.pot(x);
    State2 out;
    out[0] = kappa * c * c + d * s * c + q * s * s / kappa;
    out[1] = -d * c * c + (kappa * kappa - q) * s * c / kappa;
    return out;
  }
};

}  // namespace

PruferShooter::PruferShooter(PruferModel model, double x_start, double x_end, Boundary end_bc, StartFn start,
                             const void* start_ctx, OdeTolerances tol)
    : model_(model), x_start_(x_start), x_end_(x_end), end_bc_(end_bc), start_(start), start_ctx_(start_ctx),
      tol_(tol) {}

double PruferShooter::kappa(double mu) const { return std::sqrt(std::max(mu, 1.0)); }

double PruferShooter::end_phase(double mu) const {
  const double k = kappa(mu);
  const StartState s0 = start_(start_ctx_, mu, k);
  DormandPrince<2, PhaseRhs> ode(PhaseRhs{model_, mu, k}, x_start_, State2(s0.theta, s0.log_rho), tol_);
  return ode.advance(x_end_)[0];
}

PhaseSamples PruferShooter::sample(double mu, const Eigen::VectorXd& grid, double x_match) const {
  constexpr double pi = std::numbers::pi;
  const double k = kappa(mu);
  x_match = std::clamp(x_match, x_start_, x_end_);
  const Eigen::Index n = grid.size();
  PhaseSamples out{Eigen::VectorXd(n), Eigen::VectorXd(n)};

  const StartState s0 = start_(start_ctx_, mu, k);
  DormandPrince<2, PhaseRhs> fwd(PhaseRhs{model_, mu, k}, x_start_, State2(s0.theta, s0.log_rho), tol_);
  Eigen::Index split = 0;
  for (; split < n && grid[split] <= x_match; ++split) {
    const auto& y = fwd.advance(grid[split]);
    out.theta[split] = y[0];
    out.log_rho[split] = y[1];
  }
  if (split == n) return out;

  const State2 left = fwd.advance(x_match);
  const double theta_end = end_bc_ == Boundary::neumann ? 0.5 * pi : 0.0;
  DormandPrince<2, PhaseRhs> bwd(PhaseRhs{model_, mu, k}, x_end_, State2(theta_end, 0.0), tol_);
  for (Eigen::Index i = n - 1; i >= split; --i) {
    const auto& y = bwd.advance(grid[i]);
    out.theta[i] = y[0];
    out.log_rho[i] = y[1];
  }
  const State2 right = bwd.advance(x_match);
  // Same solution up to a factor: align the angle branch and the amplitude.
  const double turns = std::round((left[0] - right[0]) / pi);
  const double dlog = left[1] - right[1];
  for (Eigen::Index i = split; i < n; ++i) {
    out.theta[i] += turns * pi;
    out.log_rho[i] += dlog;
  }
  return out;
}

double PruferShooter::target_phase(int n) const {
  constexpr double pi = std::numbers::pi;
  return end_bc_ == Boundary::neumann ? 0.5 * pi + n * pi : (n + 1) * pi;
}

PruferShooter::Root PruferShooter::eigenvalue(int n, double lower, double tol) const {
  const double target = target_phase(n);
  auto F = [&](double mu) { return end_phase(mu) - target; };

  double lo = lower, flo = F(lo);
  for (int grow = 0; flo > 0.0; ++grow) {  // caller's bound was not below the eigenvalue
    if (grow > 60) throw SolverError("eigenvalue: no lower bracket");
    lo = lo - std::max(1.0, std::abs(lo));
    flo = F(lo);
  }
  double hi = std::max(lo, 0.0) + 2.0, fhi = F(hi);
  constexpr double kCeiling = 1e7;
  while (fhi < 0.0) {
    lo = hi;
    flo = fhi;
    hi = 2.0 * hi + 1.0;
    if (hi > kCeiling) {
      std::ostringstream diag;
      diag << "index=" << n << " target_phase=" << target << " last_mu=" << lo << " phase_gap=" << flo;
      throw SolverError("eigenvalue: bracketing exceeded the search ceiling", diag.str());
    }
    fhi = F(hi);
  }
  if (fhi == 0.0) return {hi, 0.0};

  // Illinois regula falsi; a bisection step whenever one side stalls.
  int side = 0, stall = 0;
  for (int it = 0; it < 300 && hi - lo > tol; ++it) {
    double x;
    if (stall >= 2 || hi - lo > 1.0) {
      x = 0.5 * (lo + hi);
      stall = 0;
    } else {
      x = (lo * fhi - hi * flo) / (fhi - flo);
      if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    }
    const double fx = F(x);
    if (fx == 0.0) return {x, 0.0};
    if (fx < 0.0) {
      lo = x;
      flo = fx;
      if (side == -1) {
        fhi *= 0.5;
        ++stall;
      } else {
        stall = 0;
      }
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) {
        flo *= 0.5;
        ++stall;
      } else {
        stall = 0;
      }
      side = 1;
    }
  }
  if (hi - lo > tol) {
    std::ostringstream diag;
    diag << "index=" << n << " bracket=[" << lo << ", " << hi << "]";
    throw SolverError("eigenvalue: refinement did not reach the requested width", diag.str());
  }
  return {0.5 * (lo + hi), hi - lo};
}

std::vector<double> phase_nodes(const Eigen::VectorXd& grid, const Eigen::VectorXd& theta) {
  constexpr double pi = std::numbers::pi;
  std::vector<double> nodes;
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    const double j0 = std::floor(theta[i - 1] / pi);
    const double j1 = std::floor(theta[i] / pi);
    // only interior crossings: the last sample may sit exactly on a multiple of pi (Dirichlet end)
    for (double j = j0 + 1; j <= j1; ++j) {
      const double level = j * pi;
      if (i == grid.size() - 1 && std::abs(theta[i] - level) < 1e-6) continue;
      if (i == 1 && std::abs(theta[0] - level) < 1e-6) continue;
      const double t = (level - theta[i - 1]) / (theta[i] - theta[i - 1]);
      nodes.push_back(grid[i - 1] + t * (grid[i] - grid[i - 1]));
    }
  }
  return nodes;
}

}  // namespace gausseig::detail
