#include "gausseig/radial.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gausseig/errors.hpp"
#include "gausseig/measure.hpp"

namespace gausseig {
namespace {

using detail::PruferShooter;
using detail::StartState;

struct Frobenius {
  int N, k;
  double r0;
};

// f = r^k sum_j a_j r^{2j} with a_0 = 1 and
// a_j = (k + 2j - 2 - mu) a_{j-1} / (2j (2k + 2j + N - 2)); summed until the terms vanish,
// since the derivative of a two-term truncation is only O(mu r^2) accurate.
struct Series {
  double g;   // f / r^k
  double dg;  // f' / r^k
};

Series frobenius_series(int N, int k, double mu, double r) {
  const double r2 = r * r;
  double a = 1.0, g = 1.0, dg = k / r;
  for (int j = 1; j < 40; ++j) {
    a *= (k + 2 * j - 2 - mu) / (2.0 * j * (2 * k + 2 * j + N - 2));
    const double term = a * std::pow(r2, j);
    g += term;
    dg += (k + 2 * j) * term / r;
    if (std::abs(term) < 1e-18 * std::abs(g)) break;
  }
  return {g, dg};
}

StartState frobenius_start(const void* ctx, double mu, double kappa) {
  const auto& s = *static_cast<const Frobenius*>(ctx);
  const auto [g, dg] = frobenius_series(s.N, s.k, mu, s.r0);
  return {std::atan2(kappa * g, dg), s.k * std::log(s.r0) + std::log(std::hypot(kappa * g, dg))};
}

void validate(const RadialProblem& p, int count, double tol) {
  if (p.N < 1) throw DomainError("radial: dimension must be at least 1");
  if (p.k < 0) throw DomainError("radial: angular index must be nonnegative");
  if (!(p.R > 0.0)) throw DomainError("radial: radius must be positive");
  if (count < 1) throw DomainError("radial: count must be at least 1");
  if (!(tol > 0.0)) throw DomainError("radial: tol must be positive");
}

// Series data and the shooter that points at it; kept together so the pointer stays valid.
struct Branch {
  Frobenius frob;
  double outer;
  Boundary bc;
  bool constant_first;  // k = 0 Neumann: mu = 0 with the constant eigenfunction

  Branch(const RadialProblem& p, const SolverOptions& opt)
      : frob{p.N, p.k, opt.frobenius_start},
        outer(radial_outer_radius(p, opt)),
        bc(std::isinf(p.R) ? Boundary::neumann : p.bc),
        constant_first(p.k == 0 && bc == Boundary::neumann) {
    if (!(outer > opt.frobenius_start)) throw DomainError("radial: radius below the series start");
  }
  Branch(const Branch&) = delete;

  PruferShooter shooter(const SolverOptions& opt) const {
    const detail::PruferModel model{double(frob.N - 1), double(frob.k) * (frob.k + frob.N - 2)};
    return {model, frob.r0, outer, bc, frobenius_start, &frob, opt.ode};
  }
};

double refine_width(double tol) { return std::min(tol, 1e-11); }

}  // namespace

double radial_outer_radius(const RadialProblem& p, const SolverOptions& opt) {
  if (std::isfinite(p.R)) return p.R;
  if (opt.radial_truncation > 0.0) return opt.radial_truncation;
  return std::max(12.0, std::sqrt(double(p.N)) + 6.0);
}

std::vector<double> radial_eig_values(const RadialProblem& p, int count, double tol, const SolverOptions& opt) {
  validate(p, count, tol);
  const Branch b(p, opt);
  const PruferShooter shooter = b.shooter(opt);
  std::vector<double> out;
  double lower = 0.0;
  for (int n = 0; n < count; ++n) {
    if (b.constant_first && n == 0) {
      out.push_back(0.0);
      continue;
    }
    lower = shooter.eigenvalue(n, lower, refine_width(tol)).value;
    out.push_back(lower);
  }
  return out;
}

std::vector<EigenResult> radial_eigs(const RadialProblem& p, int count, double tol, const SolverOptions& opt) {
  validate(p, count, tol);
  if (opt.samples < 5) throw DomainError("radial: need at least 5 samples");
  const Branch b(p, opt);
  const PruferShooter shooter = b.shooter(opt);
  const double r0 = opt.frobenius_start;
  const double C = radial_measure_constant(p.N);

  Eigen::VectorXd grid(opt.samples);
  grid[0] = 0.0;
  grid.tail(opt.samples - 1) = linspace(opt.samples - 1, r0, b.outer);
  const Eigen::VectorXd inner = grid.tail(opt.samples - 1);
  auto weight = [&](double r) { return std::pow(r, p.N - 1) * std::exp(-0.5 * r * r); };

  std::vector<EigenResult> out;
  double lower = 0.0;
  for (int n = 0; n < count; ++n) {
    EigenResult r;
    Eigen::VectorXd f(grid.size()), df(grid.size());
    if (b.constant_first && n == 0) {
      f.setOnes();
      df.setZero();
    } else {
      const auto root = shooter.eigenvalue(n, lower, refine_width(tol));
      lower = root.value;
      r.value = root.value;
      r.bracket = root.bracket;
      const auto ph = shooter.sample(root.value, inner, 2.0);
      const double kappa = shooter.kappa(root.value);
      const double shift = ph.log_rho.maxCoeff();
      for (Eigen::Index i = 0; i < inner.size(); ++i) {
        const double rho = std::exp(ph.log_rho[i] - shift);
        f[i + 1] = rho * std::sin(ph.theta[i]) / kappa;
        df[i + 1] = rho * std::cos(ph.theta[i]);
      }
      // origin from the series: f(0) = f(r0)/r0^k only survives for k = 0, f'(0) only for k = 1
      const double lead = f[1] / (std::pow(r0, p.k) * frobenius_series(p.N, p.k, root.value, r0).g);
      f[0] = p.k == 0 ? lead : 0.0;
      df[0] = p.k == 1 ? lead : 0.0;
      r.node_locations = detail::phase_nodes(inner, ph.theta);
      r.nodes = static_cast<int>(r.node_locations.size());
    }
    SampledFunction raw(grid, f, df);
    const double norm2 = C * integrate_on_grid(grid, 0.0, b.outer, [&](double x) {
      const double v = raw.value_at(x);
      return v * v * weight(x);
    });
    r.eigenfunction = raw.scaled(1.0 / std::sqrt(norm2));
    for (double& x : r.node_locations) x = r.eigenfunction.root_in_cell(x);
    out.push_back(std::move(r));
  }
  return out;
}

double tau1(int N, double R, double tol, const SolverOptions& opt) {
  return radial_eig_values({N, 0, R, Boundary::neumann}, 2, tol, opt)[1];
}

double nu1(int N, double R, double tol, const SolverOptions& opt) {
  return radial_eig_values({N, 1, R, Boundary::neumann}, 1, tol, opt)[0];
}

double g1_node(int N, double R, double tol, const SolverOptions& opt) {
  const auto res = radial_eigs({N, 0, R, Boundary::neumann}, 2, tol, opt);
  if (res[1].node_locations.size() != 1) throw SolverError("g1_node: expected exactly one interior zero");
  return res[1].node_locations[0];
}

BallMu1 mu1_ball(int N, double R, double tol, const SolverOptions& opt) {
  if (N < 2) throw DomainError("mu1_ball: dimension must be at least 2");
  BallMu1 out;
  auto w = radial_eigs({N, 1, R, Boundary::neumann}, 1, tol, opt);
  out.mu1 = w[0].value;
  out.w = std::move(w[0].eigenfunction);
  out.tau1 = tau1(N, R, tol, opt);
  out.k2_first = radial_eig_values({N, 2, R, Boundary::neumann}, 1, tol, opt)[0];
  if (!(out.mu1 < out.tau1 && out.mu1 < out.k2_first)) {
    std::ostringstream diag;
    diag << "N=" << N << " R=" << R << " nu1=" << out.mu1 << " tau1=" << out.tau1 << " k2=" << out.k2_first;
    throw SolverError("mu1_ball: the k = 1 branch is not the lowest nontrivial one", diag.str());
  }

  const auto& g = out.w.grid();
  const double hi = g[g.size() - 1];
  auto weight = [&](double r) { return std::pow(r, N - 1) * std::exp(-0.5 * r * r); };
  const double num = integrate_on_grid(g, 0.0, hi, [&](double r) {
    const double d = out.w.derivative_at(r);
    const double v = out.w.value_at(r);
    const double ratio = r > 0.0 ? v / r : out.w.derivative_at(0.0);
    return (d * d + (N - 1) * ratio * ratio) * weight(r);
  });
  const double den = integrate_on_grid(g, 0.0, hi, [&](double r) {
    const double v = out.w.value_at(r);
    return v * v * weight(r);
  });
  out.rayleigh = num / den;
  return out;
}

RadialShapeDerivative shape_derivative_radial(int N, double R, int k_index, double tol, const SolverOptions& opt) {
  if (!std::isfinite(R)) throw DomainError("shape_derivative_radial: radius must be finite");
  if (k_index < 0) throw DomainError("shape_derivative_radial: index must be nonnegative");
  const auto res = radial_eigs({N, 0, R, Boundary::neumann}, k_index + 1, tol, opt);
  const auto& e = res[k_index];
  const double uR = e.eigenfunction.values()[e.eigenfunction.size() - 1];
  const double formula =
      -radial_measure_constant(N) * e.value * uR * uR * std::pow(R, N - 1) * std::exp(-0.5 * R * R);

  constexpr double h = 1e-3;
  auto f = [&](double r) { return radial_eig_values({N, 0, r, Boundary::neumann}, k_index + 1, tol, opt)[k_index]; };
  return {formula, (f(R + h) - f(R - h)) / (2.0 * h), e.value};
}

}  // namespace gausseig
