#include <doctest.h>

#include <cmath>

#include "gausseig/grid2d.hpp"
#include "gausseig/radial.hpp"
#include "gausseig/special.hpp"

using namespace gausseig;

namespace {

MaskedGrid2D box(double x0, double y0, double h, int nx, int ny) {
  return MaskedGrid2D(x0, y0, h, nx, ny, [](double, double) { return true; });
}

}  // namespace

TEST_CASE("tensor spectra") {
  const double lo = square_lo(), hi = square_hi();
  const auto T = tensor_eigs({lo, hi}, {lo, hi}, 4, 1e-11);
  CHECK(T.eigenvalues[0] == 0.0);
  CHECK(std::abs(T.eigenvalues[1] - 5.0) < 1e-8);
  CHECK(std::abs(T.eigenvalues[2] - 5.0) < 1e-8);
  CHECK(T.eigenvalues[3] > 5.5);

  const auto H = tensor_eigs({-8, 8}, {-8, 8}, 6, 1e-10);
  const double expect[] = {0, 1, 1, 2, 2, 2};
  for (int i = 0; i < 6; ++i) CHECK(std::abs(H.eigenvalues[i] - expect[i]) < 1e-6);

  const auto R = tensor_eigs({-0.3, 1.1}, {0.5, kInf}, 3, 1e-10);
  CHECK(R.eigenvalues[0] == 0.0);
  CHECK(std::is_sorted(R.eigenvalues.begin(), R.eigenvalues.end()));
}

TEST_CASE("assembly has Neumann structure") {
  const MaskedGrid2D g(-1.5, -1.5, 0.1, 30, 30, [](double x, double y) { return x * x + 2 * y * y < 2.0; });
  const auto s = assemble(g);
  const Eigen::MatrixXd A(s.A);
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((A * Eigen::VectorXd::Ones(A.rows())).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  CHECK(es.eigenvalues()[0] > -1e-14);
  CHECK(es.eigenvalues()[1] > 1e-6);  // one-dimensional kernel on a connected mask
}

TEST_CASE("full-rectangle masks converge to the tensor spectrum at second order") {
  const double ax = -0.5, bx = 1.5, ay = -1.0, by = 0.6;
  const double exact = tensor_eigs({ax, bx}, {ay, by}, 2, 1e-12).eigenvalues[1];
  std::vector<double> mu;
  for (int n : {10, 20, 40}) {
    const double h = (bx - ax) / n;
    const int ny = static_cast<int>(std::lround((by - ay) / h));
    REQUIRE(std::abs(ny * h - (by - ay)) < 1e-12);
    const auto r = masked_eigs(box(ax, ay, h, n, ny), 3, 1e-12);
    CHECK(std::abs(r.eigenvalues[0]) < 1e-10);
    mu.push_back(r.eigenvalues[1]);
  }
  const double ratio = (mu[0] - mu[1]) / (mu[1] - mu[2]);
  CHECK(ratio > 3.8);
  CHECK(ratio < 4.2);
  const double richardson = (4 * mu[2] - mu[1]) / 3;
  CHECK(std::abs(richardson - exact) < 0.05 * std::abs(mu[2] - exact));
}

TEST_CASE("sparse route against separable strips") {
  // phi_2 factorizes, so the discrete rectangle spectrum is the sum of the two strip spectra
  const double h = 0.05;
  const int nx = 50, ny = 36;  // 1800 cells: above the dense limit
  const auto rect = masked_eigs(box(-1.0, -0.4, h, nx, ny), 4, 1e-12);
  const auto sx = masked_eigs(box(-1.0, -0.4, h, nx, 1), 3, 1e-12).eigenvalues;
  const auto sy = masked_eigs(box(-1.0, -0.4, h, 1, ny), 3, 1e-12).eigenvalues;
  std::vector<double> sums;
  for (double a : sx)
    for (double b : sy) sums.push_back(a + b);
  std::sort(sums.begin(), sums.end());
  REQUIRE(rect.active_cells > kDenseCellLimit);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(rect.eigenvalues[i] - sums[i]) < 1e-8);
  // unit M-norm eigenvector with Gaussian mean zero
  const auto s = assemble(box(-1.0, -0.4, h, nx, ny));
  CHECK(std::abs(rect.first_mode.cwiseAbs2().dot(s.mass) - 1.0) < 1e-12);
  CHECK(std::abs(rect.first_mode.dot(s.mass)) < 1e-8);
  const double rq = rect.first_mode.dot(s.A * rect.first_mode);
  CHECK(std::abs(rq - rect.eigenvalues[1]) < 1e-8);
}

TEST_CASE("disk mask against the radial ball solver") {
  const double R = 1.5;
  const double exact = mu1_ball(2, R, 1e-11).mu1;
  double prev_err = kInf;
  for (int n : {40, 80, 160}) {
    const double h = 2 * R / n;
    const MaskedGrid2D g(-R, -R, h, n, n, [&](double x, double y) { return x * x + y * y < R * R; });
    const double mu = masked_eigs(g, 2, 1e-10).eigenvalues[1];
    const double err = std::abs(mu - exact);
    CHECK(err < 0.5 * h * exact);
    CHECK(err < prev_err * 1.2);
    prev_err = err;
  }
  CHECK(prev_err < 0.01 * exact);
}

TEST_CASE("mask validation") {
  const MaskedGrid2D two(0, 0, 0.1, 20, 10, [](double x, double) { return x < 0.5 || x > 1.5; });
  CHECK(two.components() == 2);
  CHECK_THROWS_AS(masked_eigs(two, 2, 1e-9), DomainError);
  const MaskedGrid2D none(0, 0, 0.1, 5, 5, [](double, double) { return false; });
  CHECK_THROWS_AS(masked_eigs(none, 2, 1e-9), DomainError);
  CHECK_THROWS_AS(rounded_square(-0.1), DomainError);
  CHECK_THROWS_AS(rounded_square(0.9), DomainError);
}

TEST_CASE("rounded square masks") {
  const auto T = rounded_square(0.0, 80);
  CHECK(T.active_count() == 80 * 80);
  // an arc well inside the corner cell removes nothing
  CHECK(rounded_square(1e-4, 80).active_count() == T.active_count());
  const auto Td = rounded_square(0.2, 80);
  CHECK(Td.active_count() < T.active_count());
  CHECK(Td.cell_weight().sum() < T.cell_weight().sum());
  CHECK(Td.components() == 1);

  // delta = 0.1 on h close to 0.01: cell weights against the measure of the region
  const double lo = square_lo(), hi = square_hi(), delta = 0.1;
  const int n = 159;
  const auto g = rounded_square(delta, n);
  const double h = (hi - lo) / n;
  const double region = quad(
      [&](double x) { return normal_pdf(x) * gauss_interval_mass(lo, rounded_edge(x, delta)); }, lo, hi, 1e-14);
  const double flat = gauss_interval_mass(lo, hi - delta) * gauss_interval_mass(lo, hi);
  CHECK(region > flat);
  CHECK(std::abs(g.cell_weight().sum() - region) < 0.05 * h);
}

TEST_CASE("counterexample run") {
  const auto rep = counterexample_run({0.2, 0.1}, {0.04, 0.02}, 1e-10, 2);
  CHECK(std::abs(rep.square_mu1 - 5.0) < 1e-8);
  CHECK(rep.square_multiplicity == 2);
  CHECK(std::abs(rep.half_space_mu1 - 1.0) < 1e-9);
  CHECK(rep.half_line_mu1 >= 1.0);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    CHECK(row.above_one);
    CHECK(row.mu1.size() == 2);
    CHECK(row.extrapolated > 1.0);
    CHECK(row.extrapolated < 5.5);
  }
  CHECK_THROWS_AS(counterexample_run({0.1, 0.2}, {0.04}, 1e-10), PreconditionError);
}
