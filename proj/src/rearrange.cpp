#include "gausseig/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gausseig/errors.hpp"
#include "gausseig/special.hpp"

namespace gausseig {
namespace {

// Phi^{-1} extended to the closed unit interval.
double tail_point(double m) {
  if (m <= 0.0) return kInf;
  if (m >= 1.0) return -kInf;
  return phi_inverse(m);
}

// phi(Phi^{-1}(m)): the Gaussian perimeter of a half-space of measure m.
double isoperimetric_profile(double m) {
  if (m <= 0.0 || m >= 1.0) return 0.0;
  return normal_pdf(phi_inverse(m));
}

// Integral over (0, M) of the product of two step functions given on a common set of breakpoints.
template <typename F, typename G>
double step_product(std::vector<double> cuts, double M, F&& f, G&& g) {
  cuts.push_back(0.0);
  cuts.push_back(M);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double s0 = std::clamp(cuts[i - 1], 0.0, M), s1 = std::clamp(cuts[i], 0.0, M);
    if (!(s1 > s0)) continue;
    const double mid = 0.5 * (s0 + s1);
    total += f(mid) * g(mid) * (s1 - s0);
  }
  return total;
}

}  // namespace

WeightedSamples weigh_samples(const SampledFunction& u, const Interval1D& iv) {
  const auto& g = u.grid();
  const Eigen::Index n = g.size();
  if (n < 1) throw DomainError("weigh_samples: no samples");
  WeightedSamples out{u.values(), Eigen::VectorXd(n)};
  double lo = iv.a;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hi = i + 1 < n ? std::clamp(0.5 * (g[i] + g[i + 1]), iv.a, iv.b) : iv.b;
    out.weights[i] = gauss_interval_mass(lo, hi);
    lo = std::max(lo, hi);
  }
  return out;
}

RearrangedFunction::RearrangedFunction(WeightedSamples samples) : source_(std::move(samples)) {
  const Eigen::Index n = source_.values.size();
  if (n == 0 || source_.weights.size() != n) throw DomainError("rearrange: empty or inconsistent samples");
  if ((source_.weights.array() < 0.0).any()) throw DomainError("rearrange: negative sample weight");
  measure_ = source_.weights.sum();
  if (!(measure_ > 0.0)) throw DomainError("rearrange: domain has zero Gaussian measure");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::abs(source_.values[i]) > std::abs(source_.values[j]);
  });
  levels_.reserve(n);
  cumulative_.reserve(n);
  double acc = 0.0;
  for (Eigen::Index i : order) {
    acc += source_.weights[i];
    levels_.push_back(std::abs(source_.values[i]));
    cumulative_.push_back(acc);
  }
}

double RearrangedFunction::distribution(double t) const {
  // levels_ is decreasing: count the prefix strictly above t
  const auto it = std::partition_point(levels_.begin(), levels_.end(), [&](double v) { return v > t; });
  const auto k = it - levels_.begin();
  return k == 0 ? 0.0 : cumulative_[k - 1];
}

double RearrangedFunction::u_star(double s) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  if (it == cumulative_.end()) return 0.0;
  return levels_[it - cumulative_.begin()];
}

double RearrangedFunction::u_lowstar(double s) const { return u_star(measure_ - s); }

double RearrangedFunction::u_gauss(double x1) const {
  if (x1 <= threshold()) return 0.0;
  return u_star(phi_complementary(x1));
}

double RearrangedFunction::threshold() const { return tail_point(measure_); }

double RearrangedFunction::source_norm(double p) const {
  return (source_.values.array().abs().pow(p) * source_.weights.array()).sum();
}

double RearrangedFunction::rearranged_norm(double p) const {
  double total = 0.0, upper = kInf;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const double lower = tail_point(cumulative_[j]);
    total += std::pow(levels_[j], p) * gauss_interval_mass(lower, upper);
    upper = lower;
  }
  return total;
}

RearrangedFunction rearrange(const WeightedSamples& samples) { return RearrangedFunction(samples); }

RearrangedFunction rearrange(const SampledFunction& u, const Interval1D& iv) {
  return RearrangedFunction(weigh_samples(u, iv));
}

HardyLittlewood hardy_littlewood_gap(const WeightedSamples& u, const WeightedSamples& v) {
  if (u.values.size() != v.values.size() || u.weights.size() != v.weights.size()) {
    throw DomainError("hardy_littlewood_gap: samples live on different grids");
  }
  const double scale = u.weights.cwiseAbs().maxCoeff();
  if ((u.weights - v.weights).cwiseAbs().maxCoeff() > 1e-14 * scale) {
    throw DomainError("hardy_littlewood_gap: sample weights differ");
  }
  const RearrangedFunction ru(u), rv(v);
  const double M = ru.measure();

  std::vector<double> down = ru.cumulative();
  down.insert(down.end(), rv.cumulative().begin(), rv.cumulative().end());
  std::vector<double> up = ru.cumulative();
  for (double c : rv.cumulative()) up.push_back(M - c);

  HardyLittlewood out;
  out.lower = step_product(up, M, [&](double s) { return ru.u_star(s); }, [&](double s) { return rv.u_lowstar(s); });
  out.middle = (u.values.array() * v.values.array()).abs().matrix().dot(u.weights);
  out.upper = step_product(down, M, [&](double s) { return ru.u_star(s); }, [&](double s) { return rv.u_star(s); });
  out.lower_slack = out.middle - out.lower;
  out.upper_slack = out.upper - out.middle;
  return out;
}

PolyaSzego polya_szego_gap(const SampledFunction& u, const Interval1D& iv, double tol) {
  const auto& x = u.grid();
  const auto& y = u.values();
  const Eigen::Index n = x.size();
  if (n < 2) throw DomainError("polya_szego_gap: need at least two samples");
  if ((y.array() < 0.0).any()) throw PreconditionError("polya_szego_gap: samples must be nonnegative");
  const double top = y.maxCoeff();
  if (!(top > 0.0)) throw DomainError("polya_szego_gap: function vanishes identically");
  constexpr double kGridSlack = 1e-12;
  if (iv.left_finite()) {
    if (std::abs(x[0] - iv.a) > kGridSlack) throw DomainError("polya_szego_gap: grid must start at the left end");
    if (y[0] > kGridSlack * top) throw PreconditionError("polya_szego_gap: u must vanish at the left end");
  } else if (x[0] <= iv.a) {
    throw DomainError("polya_szego_gap: grid outside the interval");
  }
  if (iv.right_finite()) {
    if (std::abs(x[n - 1] - iv.b) > kGridSlack) throw DomainError("polya_szego_gap: grid must end at the right end");
    if (y[n - 1] > kGridSlack * top) throw PreconditionError("polya_szego_gap: u must vanish at the right end");
  } else if (x[n - 1] >= iv.b) {
    throw DomainError("polya_szego_gap: grid outside the interval");
  }

  // Piecewise-linear interpolant, continued as a constant toward an infinite end.
  const double left_tail = iv.left_finite() ? 0.0 : gauss_interval_mass(-kInf, x[0]);
  const double right_tail = iv.right_finite() ? 0.0 : gauss_interval_mass(x[n - 1], kInf);

  PolyaSzego out{};
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double slope = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    out.direct += slope * slope * gauss_interval_mass(x[i], x[i + 1]);
  }

  // The rearrangement solves Phi(x) = mu(t) for its level-t point, so by the coarea formula
  // int |(u-star)'|^2 dgamma = int_0^max I(mu(t))^2 / (-mu'(t)) dt with I(m) = phi(Phi^{-1}(m)).
  auto integrand = [&](double t) {
    double mu = (y[0] > t ? left_tail : 0.0) + (y[n - 1] > t ? right_tail : 0.0);
    double dmu = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double y0 = y[i], y1 = y[i + 1];
      if (y0 > t && y1 > t) {
        mu += gauss_interval_mass(x[i], x[i + 1]);
      } else if ((y0 > t) != (y1 > t)) {
        const double xc = x[i] + (t - y0) / (y1 - y0) * (x[i + 1] - x[i]);
        mu += y0 > t ? gauss_interval_mass(x[i], xc) : gauss_interval_mass(xc, x[i + 1]);
        dmu += normal_pdf(xc) * (x[i + 1] - x[i]) / std::abs(y1 - y0);
      }
    }
    if (!(dmu > 0.0)) return 0.0;
    const double I = isoperimetric_profile(mu);
    return I * I / dmu;
  };

  std::vector<double> cuts(y.data(), y.data() + n);
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  QuadOptions qo;
  qo.abs_tol = tol * std::max(1.0, out.direct);
  qo.rel_tol = tol;
  qo.max_intervals = std::max(4000, static_cast<int>(40 * cuts.size()));
  out.rearranged = quad(integrand, cuts, qo);
  out.gap = out.direct - out.rearranged;
  return out;
}

}  // namespace gausseig
