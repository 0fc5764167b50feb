#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gausseig/measure.hpp"
#include "gausseig/radial.hpp"
#include "gausseig/special.hpp"
#include "gausseig/sturm1d.hpp"

using namespace gausseig;

TEST_CASE("radial eigenvalues against the hypergeometric oracle") {
  CHECK(std::abs(nu1(2, 1.0, 1e-10) - 3.83762216791247934) < 1e-8);
  CHECK(std::abs(nu1(2, 1.5, 1e-10) - 1.99146918878956461) < 1e-8);
  CHECK(std::abs(nu1(3, 1.0, 1e-10) - 4.71569036991224795) < 1e-8);
  CHECK(std::abs(tau1(2, 1.0, 1e-10) - 14.7652439531701534) < 1e-8);
  CHECK(std::abs(tau1(3, 1.0, 1e-10) - 19.7843288293400760) < 1e-8);
}

TEST_CASE("whole-space radial branch") {
  for (int N : {2, 3, 5}) {
    const auto res = radial_eigs({N, 0, kInf, Boundary::neumann}, 3, 1e-10);
    CHECK(res[0].value == 0.0);
    CHECK(std::abs(res[1].value - 2.0) < 1e-8);
    CHECK(std::abs(res[2].value - 4.0) < 1e-8);
    CHECK(res[1].nodes == 1);
    CHECK(res[2].nodes == 2);
    // g_inf = (r^2 - N) / ||r^2 - N||, ||r^2 - N||^2 = 2N under gamma_N
    const auto& g = res[1].eigenfunction;
    const double s = g.value_at(0.0) < 0 ? 1.0 : -1.0;
    for (double r : {0.0, 0.5, 1.3, 2.2, 4.0}) {
      CHECK(std::abs(s * g.value_at(r) - (r * r - N) / std::sqrt(2.0 * N)) < 1e-7);
    }
    // truncation radius doubled moves nothing
    SolverOptions wide;
    wide.radial_truncation = 2 * radial_outer_radius({N, 0, kInf, Boundary::neumann});
    const auto v = radial_eig_values({N, 0, kInf, Boundary::neumann}, 2, 1e-10, wide);
    CHECK(std::abs(v[1] - res[1].value) < 1e-9);
  }
}

TEST_CASE("Dirichlet ball of radius sqrt(N)") {
  for (int N : {2, 3, 5}) {
    const auto v = radial_eig_values({N, 0, std::sqrt(double(N)), Boundary::dirichlet}, 1, 1e-10);
    CHECK(std::abs(v[0] - 2.0) < 1e-8);
  }
}

TEST_CASE("dimension one reduces to even modes of the symmetric interval") {
  for (double R : {0.7, 1.5, 3.0}) {
    const auto rad = radial_eig_values({1, 0, R, Boundary::neumann}, 3, 1e-10);
    const auto line = eig1d_values(Interval1D(-R, R), Boundary::neumann, 5, 1e-10);
    CHECK(std::abs(rad[1] - line[2]) < 2e-10);
    CHECK(std::abs(rad[2] - line[4]) < 2e-10);
  }
}

TEST_CASE("ball first nontrivial eigenvalue") {
  for (auto [N, R] : {std::pair{2, 1.0}, {3, 1.0}, {2, 1.5}, {5, 2.5}}) {
    const auto b = mu1_ball(N, R, 1e-10);
    CHECK(b.mu1 < b.tau1);
    CHECK(b.mu1 < b.k2_first);
    CHECK(std::abs(b.rayleigh - b.mu1) < 1e-9);
    const auto& w = b.w;
    CHECK((w.values().array() >= 0.0).all());
    CHECK((w.derivatives()->array() >= -1e-9).all());
    // unit norm under gamma_N
    const double norm = radial_measure_constant(N) *
                        integrate_on_grid(w.grid(), 0.0, R, [&](double r) {
                          const double v = w.value_at(r);
                          return v * v * std::pow(r, N - 1) * std::exp(-0.5 * r * r);
                        });
    CHECK(std::abs(norm - 1.0) < 1e-10);
  }
  CHECK(std::abs(mu1_ball(2, 1.5, 1e-10).mu1 - 1.99146918878956461) < 1e-8);
  CHECK_THROWS_AS(mu1_ball(1, 1.0, 1e-9), DomainError);
}

TEST_CASE("large balls approach the whole-space value") {
  double prev = kInf;
  for (double R : {4.0, 6.0, 8.0, 12.0}) {
    const double v = nu1(2, R, 1e-10);
    CHECK(v - 1.0 < prev - 1.0);
    CHECK(v > 1.0);
    prev = v;
  }
  CHECK(std::abs(prev - 1.0) <= 1e-3);
}

TEST_CASE("g1 node") {
  const double r0 = g1_node(2, kInf, 1e-10);
  CHECK(std::abs(r0 - std::sqrt(2.0)) < 1e-8);
  const double r1 = g1_node(3, 1.0, 1e-10);
  CHECK(r1 > 0.0);
  CHECK(r1 < 1.0);
}

TEST_CASE("radial shape derivative") {
  const auto d = shape_derivative_radial(2, 1.0, 1, 1e-11);
  CHECK(d.formula < 0.0);
  CHECK(std::abs(d.formula - d.fd) <= 1e-4 * (1 + std::abs(d.fd)));
  const auto d3 = shape_derivative_radial(3, 2.0, 2, 1e-11);
  CHECK(d3.formula < 0.0);
  CHECK(std::abs(d3.formula - d3.fd) <= 1e-4 * (1 + std::abs(d3.fd)));
  const auto d0 = shape_derivative_radial(2, 1.0, 0, 1e-11);
  CHECK(d0.formula == 0.0);
}

TEST_CASE("radial validation") {
  CHECK_THROWS_AS(radial_eigs({2, -1, 1.0, Boundary::neumann}, 1, 1e-9), DomainError);
  CHECK_THROWS_AS(radial_eigs({2, 0, -1.0, Boundary::neumann}, 1, 1e-9), DomainError);
  CHECK_THROWS_AS(radial_eigs({0, 0, 1.0, Boundary::neumann}, 1, 1e-9), DomainError);
}
