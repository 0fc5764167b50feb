#include "gausseig/special.hpp"

#include <map>
#include <mutex>

namespace gausseig {
namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955125739;  // 2/sqrt(pi)

// Low-order starting guess for erfinv (Giles' single-precision rational fit).
double erfinv_guess(double p) {
  double w = -std::log((1.0 - p) * (1.0 + p));
  double x;
  if (w < 6.25) {
    w -= 3.125;
    x = -3.6444120640178196996e-21;
    x = -1.685059138182016589e-19 + x * w;
    x = 1.2858480715256400167e-18 + x * w;
    x = 1.115787767802518096e-17 + x * w;
    x = -1.333171662854620906e-16 + x * w;
    x = 2.0972767875968561637e-17 + x * w;
    x = 6.6376381343583238325e-15 + x * w;
    x = -4.0545662729752068639e-14 + x * w;
    x = -8.1519341976054721522e-14 + x * w;
    x = 2.6335093153082322977e-12 + x * w;
    x = -1.2975133253453532498e-11 + x * w;
    x = -5.4154120542946279317e-11 + x * w;
    x = 1.051212273321532285e-09 + x * w;
    x = -4.1126339803469836976e-09 + x * w;
    x = -2.9070369957882005086e-08 + x * w;
    x = 4.2347877827932403518e-07 + x * w;
    x = -1.3654692000834678645e-06 + x * w;
    x = -1.3882523362786468719e-05 + x * w;
    x = 0.0001867342080340571352 + x * w;
    x = -0.00074070253416626697512 + x * w;
    x = -0.0060336708714301490533 + x * w;
    x = 0.24015818242558961693 + x * w;
    x = 1.6536545626831027356 + x * w;
  } else if (w < 16.0) {
    w = std::sqrt(w) - 3.25;
    x = 2.2137376921775787049e-09;
    x = 9.0756561938885390979e-08 + x * w;
    x = -2.7517406297064545428e-07 + x * w;
    x = 1.8239629214389227755e-08 + x * w;
    x = 1.5027403968909827627e-06 + x * w;
    x = -4.013867526981545969e-06 + x * w;
    x = 2.9234449089955446044e-06 + x * w;
    x = 1.2475304481671778723e-05 + x * w;
    x = -4.7318229009055733981e-05 + x * w;
    x = 6.8284851459573175448e-05 + x * w;
    x = 2.4031110387097893999e-05 + x * w;
    x = -0.0003550375203628474796 + x * w;
    x = 0.00095328937973738049703 + x * w;
    x = -0.0016882755560235047313 + x * w;
    x = 0.0024914420961078508066 + x * w;
    x = -0.0037512085075692412107 + x * w;
    x = 0.005370914553590063617 + x * w;
    x = 1.0052589676941592334 + x * w;
    x = 3.0838856104922207635 + x * w;
  } else {
    w = std::sqrt(w) - 5.0;
    x = -2.7109920616438573243e-11;
    x = -2.5556418169965252055e-10 + x * w;
    x = 1.5076572693500548083e-09 + x * w;
    x = -3.7894654401267369937e-09 + x * w;
    x = 7.6157012080783393804e-09 + x * w;
    x = -1.4960026627149240478e-08 + x * w;
    x = 2.9147953450901080826e-08 + x * w;
    x = -6.7711997758452339498e-08 + x * w;
    x = 2.2900482228026654717e-07 + x * w;
    x = -9.9298272942317002539e-07 + x * w;
    x = 4.5260625972231537039e-06 + x * w;
    x = -1.9681778105531670567e-05 + x * w;
    x = 7.5995277030017761139e-05 + x * w;
    x = -0.00021503011930044477347 + x * w;
    x = -0.00013871931833623122026 + x * w;
    x = 1.0103004648645343977 + x * w;
    x = 4.8499064014085844221 + x * w;
  }
  return x * p;
}

// Root of g on [lo, hi] with g increasing: Newton steps, bisection whenever a
// step leaves the bracket. `step` returns the Newton correction at x and the
// sign of g(x).
template <typename Step>
double safeguarded_newton(double x, double lo, double hi, Step step) {
  for (int it = 0; it < 100; ++it) {
    auto [dx, sign] = step(x);
    if (sign > 0) hi = std::min(hi, x);
    if (sign < 0) lo = std::max(lo, x);
    if (sign == 0) return x;
    double next = x - dx;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace

double erfinv(double p) {
  if (std::isnan(p) || std::abs(p) >= 1.0) throw DomainError("erfinv: |p| must be < 1");
  if (p == 0.0) return 0.0;
  if (p < 0.0) return -erfinv(-p);
  if (p > 0.5) return erfcinv(1.0 - p);
  const double x0 = erfinv_guess(p);
  return safeguarded_newton(x0, 0.0, 1.0, [p](double x) {
    const double g = std::erf(x) - p;
    return std::pair{g / (kTwoOverSqrtPi * std::exp(-x * x)), (g > 0) - (g < 0)};
  });
}

double erfcinv(double q) {
  if (std::isnan(q) || q <= 0.0 || q >= 2.0) throw DomainError("erfcinv: q must lie in (0, 2)");
  if (q == 1.0) return 0.0;
  if (q > 1.0) return -erfcinv(2.0 - q);
  if (q > 0.5) return erfinv(1.0 - q);
  // Solve log erfc(x) = log q for x > 0; the log form keeps Newton well scaled deep in the tail.
  const double logq = std::log(q);
  double x0;
  if (q > 1e-12) {
    x0 = erfinv_guess(1.0 - q);
  } else {
    // erfc(x) ~ exp(-x^2)/(x sqrt(pi)) in the far tail.
    x0 = std::sqrt(-logq - std::log(std::sqrt(-std::numbers::pi * logq)));
  }
  const double hi = std::sqrt(-std::log(q)) + 1.0;
  return safeguarded_newton(std::clamp(x0, 0.0, hi), 0.0, hi, [logq](double x) {
    const double ec = std::erfc(x);
    const double g = logq - std::log(ec);  // increasing in x
    const double dg = kTwoOverSqrtPi * std::exp(-x * x) / ec;
    return std::pair{g / dg, (g > 0) - (g < 0)};
  });
}

double phi_inverse(double m) {
  if (std::isnan(m) || m <= 0.0 || m >= 1.0) throw DomainError("phi_inverse: m must lie in (0, 1)");
  return std::numbers::sqrt2 * erfcinv(2.0 * m);
}

double gauss_interval_mass(double a, double b) {
  if (!(a < b)) return 0.0;
  // Work in whichever tail keeps both terms small.
  if (a >= 0.0) return phi_complementary(a) - phi_complementary(b);
  if (b <= 0.0) return phi_complementary(-b) - phi_complementary(-a);
  return 1.0 - phi_complementary(b) - phi_complementary(-a);
}

HermitePoly HermitePoly::of_degree(int n) {
  if (n < 0) throw DomainError("HermitePoly: negative degree");
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd cur = Eigen::VectorXd::Zero(n + 1);
  cur[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n + 1);
    next.tail(n) = cur.head(n);            // t * He_{k-1}
    next -= static_cast<double>(k - 1) * prev;  // - (k-1) He_{k-2}
    prev = cur;
    cur = next;
  }
  return {n, cur};
}

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");

  GaussLegendre rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace gausseig
