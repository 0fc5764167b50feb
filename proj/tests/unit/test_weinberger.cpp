#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gausseig/measure.hpp"
#include "gausseig/radial.hpp"
#include "gausseig/special.hpp"
#include "gausseig/weinberger.hpp"

using namespace gausseig;

namespace {

constexpr double kPi = std::numbers::pi;

SymmetricDomain2D square_of_measure(double m) {
  // gamma(-a, a)^2 = m
  const double a = phi_inverse(0.5 * (1 - std::sqrt(m)));
  return SymmetricDomain2D::rectangle(a, a);
}

SymmetricDomain2D star_of_measure(double m, double amp, int lobes) {
  return fit_measure(
      [=](double c) {
        return SymmetricDomain2D::polar([=](double t) { return c * (1 + amp * std::cos(lobes * t)); });
      },
      m, 0.05, 5.0);
}

}  // namespace

TEST_CASE("profile shape") {
  const auto p = build_profile(2, 1.3, 1e-11);
  CHECK(std::abs(p.G(0.0)) < 1e-12);
  CHECK(p.G(1.3) == p.G(2.5));
  CHECK(p.G(7.0) == p.w.values()[p.w.size() - 1]);
  CHECK(p.dG(2.0) == 0.0);
  for (double r : {0.1, 0.5, 1.0, 1.25}) CHECK(p.G(r + 0.02) > p.G(r));
  CHECK(p.Ndens(0.4) > p.Ndens(0.9));
  CHECK(p.Ndens(1.0) > p.Ndens(1.2));
  CHECK(p.Ndens(1.4) > p.Ndens(3.0));
  CHECK(std::abs(p.Ndens(1e-7) - p.Ndens(0.0)) < 1e-6 * p.Ndens(0.0));
  CHECK(p.Ddens(0.5) <= p.Ddens(1.0));
  // three dimensions: the profile machinery is dimension-generic
  const auto q = build_profile(3, 2.0, 1e-10);
  CHECK(q.Ndens(0.5) > q.Ndens(1.5));
  CHECK_THROWS_AS(build_profile(2, 0.0, 1e-9), DomainError);
}

TEST_CASE("domain measures") {
  const auto d = SymmetricDomain2D::disk(1.1);
  CHECK(std::abs(d.measure() - (1 - std::exp(-0.605))) < 1e-15);
  const auto sq = SymmetricDomain2D::rectangle(0.8, 0.5);
  CHECK(std::abs(sq.measure() - gauss_interval_mass(-0.8, 0.8) * gauss_interval_mass(-0.5, 0.5)) < 1e-15);
  // the polar route for a rectangle integrates exactly between kinks
  const auto sq_polar = SymmetricDomain2D::polar(
      [](double t) { return std::min(0.8 / std::abs(std::cos(t)), 0.5 / std::abs(std::sin(t))); },
      {std::atan2(0.5, 0.8), kPi - std::atan2(0.5, 0.8), kPi + std::atan2(0.5, 0.8), 2 * kPi - std::atan2(0.5, 0.8)});
  CHECK(std::abs(sq_polar.measure() - sq.measure()) < 1e-13);
  // mask measure is that of the union of its cells
  const MaskedGrid2D g(-1.0, -1.0, 0.1, 20, 20, [](double x, double y) { return std::abs(x) + std::abs(y) < 0.93; });
  const auto mk = SymmetricDomain2D::mask(g);
  CHECK(std::abs(mk.measure() - g.cell_weight().sum()) < 1e-3);
  const auto full = SymmetricDomain2D::mask(MaskedGrid2D(-0.6, -0.4, 0.1, 12, 8, [](double, double) { return true; }));
  CHECK(std::abs(full.measure() - gauss_interval_mass(-0.6, 0.6) * gauss_interval_mass(-0.4, 0.4)) < 1e-15);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(SymmetricDomain2D::polar([](double t) { return 1 + 0.2 * std::cos(t); }), PreconditionError);
  CHECK_THROWS_AS(SymmetricDomain2D::mask(MaskedGrid2D(-1.0, -0.9, 0.1, 20, 20, [](double, double) { return true; })),
                  PreconditionError);
  CHECK_THROWS_AS(SymmetricDomain2D::mask(MaskedGrid2D(-1.0, -1.0, 0.1, 20, 20, [](double x, double y) {
                    return x > -0.5 && x < 0.8 && std::abs(y) < 0.5;
                  })),
                  PreconditionError);
  CHECK_THROWS_AS(SymmetricDomain2D::mask(MaskedGrid2D(-1.0, -1.0, 0.1, 20, 20, [](double x, double) {
                    return std::abs(x) > 0.5;
                  })),
                  DomainError);
  const auto p = build_profile(2, 1.0, 1e-10);
  CHECK_THROWS_AS(weinberger_bound(SymmetricDomain2D::disk(1.01), p), PreconditionError);
}

TEST_CASE("the ball attains the bound") {
  const double R = 1.2;
  const auto rep = szego_weinberger_check(SymmetricDomain2D::disk(R));
  CHECK(std::abs(rep.bound - rep.mu1_ball) < 1e-9);
  CHECK(std::abs(rep.mu1_ball - mu1_ball(2, R, 1e-10).mu1) < 1e-9);
  CHECK(rep.equality);
  CHECK(rep.ok);
  CHECK(std::abs(rep.N_domain - rep.N_ball) < 1e-12);
  CHECK(std::abs(rep.D_domain - rep.D_ball) < 1e-12);
  // P_i by symmetry: both moments vanish
  CHECK(std::abs(rep.moments[0]) < 1e-12);
}

TEST_CASE("centered squares of measure 0.3, 0.5, 0.7") {
  for (double m : {0.3, 0.5, 0.7}) {
    const auto sq = square_of_measure(m);
    REQUIRE(std::abs(sq.measure() - m) < 1e-14);
    const auto rep = szego_weinberger_check(sq);
    CHECK(rep.ok);
    CHECK(!rep.equality);
    // tensor oracle below the bound, bound strictly below the ball
    CHECK(rep.mu1_domain <= rep.bound);
    CHECK(rep.bound < rep.mu1_ball - 1e-6);
    CHECK(rep.N_domain < rep.N_ball);
    CHECK(rep.D_domain > rep.D_ball);
    CHECK(std::abs(rep.moments[0]) < 1e-10);
    CHECK(std::abs(rep.moments[1]) < 1e-10);
  }
}

TEST_CASE("star-shaped domains") {
  const auto star = star_of_measure(0.5, 0.3, 2);
  CHECK(std::abs(star.measure() - 0.5) < 1e-12);
  const auto rep = szego_weinberger_check(star);
  CHECK(rep.ok);
  CHECK(!rep.equality);
  CHECK(rep.bound < rep.mu1_ball);
  CHECK(rep.mu1_domain <= rep.bound * 1.02);
}

TEST_CASE("annulus mask") {
  // {0.3 < |x| < r2} on a centered grid, measure near 0.5
  auto family = [](double r2) {
    return SymmetricDomain2D::mask(MaskedGrid2D(-2.0, -2.0, 0.025, 160, 160, [=](double x, double y) {
      const double r = std::hypot(x, y);
      return r > 0.3 && r < r2;
    }));
  };
  const auto ann = fit_measure(family, 0.5, 0.8, 1.99);
  CHECK(std::abs(ann.measure() - 0.5) < 0.01);
  const auto rep = szego_weinberger_check(ann);
  CHECK(rep.ok);
  CHECK(rep.bound < rep.mu1_ball);
  CHECK(rep.N_domain < rep.N_ball);
  CHECK(rep.D_domain > rep.D_ball);
  CHECK(std::abs(rep.moments[0]) < 1e-12);
}
