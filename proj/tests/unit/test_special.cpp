#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gausseig/interval.hpp"
#include "gausseig/special.hpp"

using namespace gausseig;

namespace {

// Maclaurin series of erf summed until terms vanish.
double erf_series(double x) {
  double term = x, sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-18) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

}  // namespace

TEST_CASE("erf values") {
  CHECK(gausseig::erf(0.0) == 0.0);
  CHECK(gausseig::erf(kInf) == 1.0);
  CHECK(gausseig::erf(-kInf) == -1.0);
  CHECK(std::abs(gausseig::erf(1.0) - 0.842700792949714869) < 1e-15);
  for (double x : {0.1, 0.5, 1.0, 1.7, 2.5}) {
    CHECK(std::abs(gausseig::erf(x) - erf_series(x)) < 1e-14);
    CHECK(gausseig::erf(-x) == -gausseig::erf(x));
  }
}

TEST_CASE("erfinv values and domain") {
  CHECK(erfinv(0.0) == 0.0);
  CHECK(std::abs(erfinv(gausseig::erf(0.7)) - 0.7) < 1e-13);
  CHECK(std::abs(erfinv(0.5) - 0.476936276204469873) < 1e-14);
  CHECK(erfinv(-0.3) == -erfinv(0.3));
  CHECK_THROWS_AS(erfinv(1.0), DomainError);
  CHECK_THROWS_AS(erfinv(-1.5), DomainError);
  CHECK_THROWS_AS(phi_inverse(0.0), DomainError);
  CHECK_THROWS_AS(phi_inverse(1.0), DomainError);
}

TEST_CASE("round trips on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> p(-0.999999, 0.999999), m(1e-9, 1.0 - 1e-9);
  double worst_erf = 0.0, worst_phi = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double pi = p(rng), mi = m(rng);
    worst_erf = std::max(worst_erf, std::abs(gausseig::erf(erfinv(pi)) - pi));
    worst_phi = std::max(worst_phi, std::abs(phi_complementary(phi_inverse(mi)) - mi));
  }
  CHECK(worst_erf <= 1e-12);
  CHECK(worst_phi <= 1e-12);
  // deep tails
  for (double q : {1e-15, 1e-30, 1e-100}) CHECK(std::abs(phi_complementary(phi_inverse(q)) / q - 1) < 1e-10);
}

TEST_CASE("Phi values") {
  CHECK(phi_complementary(0.0) == 0.5);
  CHECK(phi_complementary(-kInf) == 1.0);
  CHECK(phi_complementary(kInf) == 0.0);
  const double tail = quad([](double s) { return normal_pdf(s); }, 1.6449, kInf, 1e-13);
  CHECK(std::abs(phi_complementary(1.6449) - tail) < 1e-12);
  CHECK(std::abs(phi_complementary(1.6449) - 0.05) < 1e-5);
  double prev = 1.0;
  for (double t = -5; t <= 5; t += 0.25) {
    CHECK(phi_complementary(t) < prev);
    prev = phi_complementary(t);
  }
}

TEST_CASE("Hermite polynomials") {
  const auto h1 = hermite_eval(1, 3.0);
  CHECK(h1.value == 3.0);
  CHECK(h1.derivative == 1.0);
  const auto H5 = HermitePoly::of_degree(5);
  for (double t : {-2.0, -0.3, 0.0, 1.1, 2.7}) {
    const double expect = std::pow(t, 5) - 10 * std::pow(t, 3) + 15 * t;
    CHECK(std::abs(hermite_eval(5, t).value - expect) < 1e-12 * (1 + std::abs(expect)));
    CHECK(std::abs(H5(t) - expect) < 1e-12 * (1 + std::abs(expect)));
  }
  for (double s : {-1.0, 1.0}) {
    const double t = std::sqrt(3 + s * std::sqrt(6.0));
    CHECK(std::abs(hermite_eval(5, t).derivative) < 1e-12);
  }
  for (int n = 0; n <= 10; ++n) {
    const auto P = HermitePoly::of_degree(n);
    CHECK(P.coefficients.size() == n + 1);
    CHECK(P.coefficients[n] == 1.0);
    if (n >= 2) {
      const auto a = HermitePoly::of_degree(n - 1), b = HermitePoly::of_degree(n - 2);
      for (int i = 0; i <= n; ++i) {
        const double ta = i >= 1 ? a.coefficients[i - 1] : 0.0;
        const double nb = i <= n - 2 ? (n - 1) * b.coefficients[i] : 0.0;
        CHECK(P.coefficients[i] == doctest::Approx(ta - nb));
      }
    }
    for (double t = -6; t <= 6; t += 0.37) {
      const auto v = hermite_eval(n, t);
      CHECK(v.ode_residual <= 1e-9 * (1 + std::abs(v.value)));
    }
  }
}

TEST_CASE("Hermite orthogonality under the Gaussian") {
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 6; ++n) {
      const double ip = quad(
          [&](double t) { return hermite_eval(m, t).value * hermite_eval(n, t).value * normal_pdf(t); }, -kInf,
          kInf, 1e-10);
      double expect = 0.0;
      if (m == n) expect = std::tgamma(n + 1.0);
      CHECK(std::abs(ip - expect) < 1e-8 * (1 + expect));
    }
  }
}

TEST_CASE("quad examples and failure") {
  CHECK(std::abs(quad([](double) { return 1.0; }, 0.0, 1.0) - 1.0) < 1e-14);
  CHECK(std::abs(quad([](double t) { return normal_pdf(t); }, -kInf, kInf, 1e-13) - 1.0) < 1e-12);
  const double m3 = quad([](double s) { return std::exp(-0.5 * s * s) * s * s * s; }, 0.0, 1.0, 1e-14);
  CHECK(std::abs(m3 - 0.180408020862099729) < 1e-13);
  QuadOptions opt;
  opt.abs_tol = 1e-14;
  opt.max_intervals = 5;
  const std::array<double, 2> span{0.0, 1.0};
  CHECK_THROWS_AS(quad([](double t) { return 1.0 / std::sqrt(t); }, span, opt), QuadratureError);
  try {
    quad([](double t) { return 1.0 / std::sqrt(t); }, span, opt);
  } catch (const QuadratureError& e) {
    CHECK(e.partial() > 1.0);
    CHECK(e.error_estimate() > 0.0);
  }
  // integrable endpoint singularity converges with a generous budget
  CHECK(std::abs(quad([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-8) - 2.0) < 1e-7);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {1, 2, 5, 16, 64, 128}) {
    const auto& r = gauss_legendre(n);
    CHECK(r.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    const int deg = 2 * n - 1;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += r.weights[j] * std::pow(r.nodes[j], deg - (deg % 2));
    const double exact = 2.0 / (deg - (deg % 2) + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-12));
  }
}
