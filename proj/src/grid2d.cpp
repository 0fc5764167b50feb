#include "gausseig/grid2d.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gausseig/errors.hpp"
#include "gausseig/parallel.hpp"
#include "gausseig/special.hpp"
#include "gausseig/sturm1d.hpp"

namespace gausseig {
namespace {

double phi2(double x, double y) { return std::exp(-0.5 * (x * x + y * y)) / (2.0 * std::numbers::pi); }

void check_mask(const MaskedGrid2D& g) {
  if (g.active_count() == 0) throw DomainError("masked grid: no active cells");
  if (g.components() != 1) throw DomainError("masked grid: active cells are not connected");
}

SpectrumResult dense_eigs(const Assembly& s, int count) {
  const Eigen::VectorXd isq = s.mass.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd B = isq.asDiagonal() * Eigen::MatrixXd(s.A) * isq.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  if (es.info() != Eigen::Success) throw SolverError("masked_eigs: dense eigensolver failed");
  SpectrumResult out;
  for (int i = 0; i < count; ++i) out.eigenvalues.push_back(es.eigenvalues()[i]);
  if (count > 1) out.first_mode = isq.asDiagonal() * es.eigenvectors().col(1);
  return out;
}

// Shift-invert subspace iteration on the complement of the constants.
SpectrumResult sparse_eigs(const Assembly& s, int count, double tol) {
  constexpr double kShift = 0.5;
  constexpr int kMaxIter = 1000;
  const Eigen::Index n = s.mass.size();
  const int want = count - 1;
  const int p = std::min<int>(want + 5, static_cast<int>(n) - 1);

  Eigen::SparseMatrix<double> K = s.A;
  for (Eigen::Index i = 0; i < n; ++i) K.coeffRef(i, i) -= kShift * s.mass[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(K);
  if (solver.info() != Eigen::Success) throw SolverError("masked_eigs: factorization failed");

  const Eigen::VectorXd c = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(s.mass.sum()));
  auto deflate = [&](Eigen::MatrixXd& Y) {
    const Eigen::RowVectorXd coef = (c.cwiseProduct(s.mass)).transpose() * Y;
    Y -= c * coef;
  };

  std::mt19937_64 rng(1);
  std::normal_distribution<double> Z;
  Eigen::MatrixXd X = Eigen::MatrixXd::NullaryExpr(n, p, [&] { return Z(rng); });
  deflate(X);

  Eigen::VectorXd prev = Eigen::VectorXd::Constant(p, kInf);
  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::MatrixXd Y = solver.solve(s.mass.asDiagonal() * X);
    deflate(Y);
    const Eigen::MatrixXd Ar = Y.transpose() * (s.A * Y);
    const Eigen::MatrixXd Mr = Y.transpose() * s.mass.asDiagonal() * Y;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Ar + Ar.transpose()),
                                                                 0.5 * (Mr + Mr.transpose()));
    if (es.info() != Eigen::Success) throw SolverError("masked_eigs: Rayleigh-Ritz step failed");
    X = Y * es.eigenvectors();
    const Eigen::VectorXd theta = es.eigenvalues();
    bool done = it >= 2;
    for (int i = 0; i < want && done; ++i) {
      done = std::abs(theta[i] - prev[i]) <= tol * std::max(1.0, std::abs(theta[i]));
    }
    prev = theta;
    if (done) {
      SpectrumResult out;
      out.eigenvalues.push_back(0.0);
      for (int i = 0; i < want; ++i) out.eigenvalues.push_back(theta[i]);
      if (want > 0) out.first_mode = X.col(0);
      return out;
    }
  }
  std::ostringstream diag;
  diag << "cells=" << n << " last=" << prev.head(want).transpose();
  throw SolverError("masked_eigs: subspace iteration did not converge", diag.str());
}

}  // namespace

MaskedGrid2D::MaskedGrid2D(double x0, double y0, double h, int nx, int ny,
                           const std::function<bool(double, double)>& inside)
    : x0_(x0), y0_(y0), h_(h), nx_(nx), ny_(ny), number_(std::size_t(nx) * ny, -1) {
  if (!(h > 0.0) || nx < 1 || ny < 1) throw DomainError("MaskedGrid2D: bad grid shape");
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (inside(center_x(i), center_y(j))) {
        number_[std::size_t(j) * nx + i] = static_cast<int>(cells_.size());
        cells_.emplace_back(i, j);
      }
    }
  }
  cell_weight_.resize(cells_.size());
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    const auto [i, j] = cells_[k];
    cell_weight_[k] = phi2(center_x(i), center_y(j)) * h * h;
    if (i + 1 < nx && active(i + 1, j)) {
      faces_.push_back({int(k), number(i + 1, j), phi2(x0 + (i + 1) * h, center_y(j)) * h});
    }
    if (j + 1 < ny && active(i, j + 1)) {
      faces_.push_back({int(k), number(i, j + 1), phi2(center_x(i), y0 + (j + 1) * h) * h});
    }
  }
}

int MaskedGrid2D::number(int i, int j) const {
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return -1;
  return number_[std::size_t(j) * nx_ + i];
}

int MaskedGrid2D::components() const {
  std::vector<int> seen(cells_.size(), 0);
  std::vector<int> stack;
  int count = 0;
  for (std::size_t start = 0; start < cells_.size(); ++start) {
    if (seen[start]) continue;
    ++count;
    seen[start] = 1;
    stack.push_back(int(start));
    while (!stack.empty()) {
      const auto [i, j] = cells_[stack.back()];
      stack.pop_back();
      for (const auto& [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const int q = number(i + di, j + dj);
        if (q >= 0 && !seen[q]) {
          seen[q] = 1;
          stack.push_back(q);
        }
      }
    }
  }
  return count;
}

Assembly assemble(const MaskedGrid2D& g) {
  const int n = g.active_count();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(4 * g.faces().size());
  for (const auto& f : g.faces()) {
    const double a = f.weight / g.h();
    t.emplace_back(f.p, f.p, a);
    t.emplace_back(f.q, f.q, a);
    t.emplace_back(f.p, f.q, -a);
    t.emplace_back(f.q, f.p, -a);
  }
  Assembly s;
  s.A.resize(n, n);
  s.A.setFromTriplets(t.begin(), t.end());
  s.mass = g.cell_weight();
  return s;
}

SpectrumResult tensor_eigs(const Interval1D& ivx, const Interval1D& ivy, int count, double tol) {
  if (count < 1) throw DomainError("tensor_eigs: count must be at least 1");
  const auto mx = eig1d_values(ivx, Boundary::neumann, count, tol);
  const auto my = eig1d_values(ivy, Boundary::neumann, count, tol);
  SpectrumResult out;
  for (double a : mx)
    for (double b : my) out.eigenvalues.push_back(a + b);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.eigenvalues.resize(count);
  return out;
}

SpectrumResult masked_eigs(const MaskedGrid2D& g, int count, double tol) {
  if (count < 1) throw DomainError("masked_eigs: count must be at least 1");
  if (!(tol > 0.0)) throw DomainError("masked_eigs: tol must be positive");
  check_mask(g);
  if (count > g.active_count()) throw DomainError("masked_eigs: more eigenvalues requested than cells");
  const Assembly s = assemble(g);
  SpectrumResult out = g.active_count() <= kDenseCellLimit || count + 6 > g.active_count()
                           ? dense_eigs(s, count)
                           : sparse_eigs(s, count, tol);
  if (out.first_mode.size() > 0) {
    out.first_mode /= std::sqrt(out.first_mode.cwiseAbs2().dot(s.mass));
  }
  out.h = g.h();
  out.active_cells = g.active_count();
  return out;
}

double square_lo() { return std::sqrt(3.0 - std::sqrt(6.0)); }
double square_hi() { return std::sqrt(3.0 + std::sqrt(6.0)); }

double rounded_edge(double x, double delta) {
  const double corner = square_hi() - delta;
  if (x <= corner) return square_hi();
  const double d = x - corner;
  return corner + std::sqrt(std::max(0.0, delta * delta - d * d));
}

MaskedGrid2D rounded_square(double delta, int cells) {
  const double lo = square_lo(), hi = square_hi();
  if (!(delta >= 0.0 && delta < 0.5 * (hi - lo))) throw DomainError("rounded_square: delta out of range");
  if (cells < 2) throw DomainError("rounded_square: need at least two cells per side");
  const double h = (hi - lo) / cells;
  return MaskedGrid2D(lo, lo, h, cells, cells,
                      [&](double x, double y) { return delta == 0.0 || y <= rounded_edge(x, delta); });
}

CounterexampleReport counterexample_run(const std::vector<double>& deltas, const std::vector<double>& h_levels,
                                        double tol, unsigned workers) {
  if (deltas.empty() || h_levels.empty()) throw DomainError("counterexample_run: empty sweep");
  if (!std::is_sorted(deltas.rbegin(), deltas.rend()) || !std::is_sorted(h_levels.rbegin(), h_levels.rend())) {
    throw PreconditionError("counterexample_run: deltas and grid spacings must be descending");
  }
  const double lo = square_lo(), hi = square_hi();
  CounterexampleReport rep;
  const auto sq = tensor_eigs({lo, hi}, {lo, hi}, 4, tol);
  rep.square_mu1 = sq.eigenvalues[1];
  rep.square_multiplicity = static_cast<int>(std::count_if(sq.eigenvalues.begin(), sq.eigenvalues.end(), [&](double v) {
    return std::abs(v - rep.square_mu1) <= 1e-6 * std::max(1.0, rep.square_mu1);
  }));

  // The half-space {x_1 > c} x R separates: its first nontrivial eigenvalue is min(mu_1(c, inf), mu_1(R)).
  const double side_mass = gauss_interval_mass(lo, hi);
  rep.half_space_threshold = phi_inverse(side_mass * side_mass);
  rep.half_line_mu1 = mu1_interval({rep.half_space_threshold, kInf}, tol);
  rep.half_space_mu1 = std::min(rep.half_line_mu1, mu1_interval(Interval1D::real_line(), tol));

  std::vector<int> cells;
  for (double h : h_levels) {
    if (!(h > 0.0)) throw DomainError("counterexample_run: grid spacing must be positive");
    cells.push_back(std::max(2, static_cast<int>(std::lround((hi - lo) / h))));
  }
  std::vector<std::pair<double, int>> jobs;
  for (double d : deltas)
    for (int n : cells) jobs.emplace_back(d, n);
  const auto mu = parallel_map(
      jobs, [&](const std::pair<double, int>& job) { return masked_eigs(rounded_square(job.first, job.second), 2, tol).eigenvalues[1]; },
      workers);

  for (std::size_t d = 0; d < deltas.size(); ++d) {
    CounterexampleRow row{deltas[d], {}, {}, 0.0, true};
    for (std::size_t l = 0; l < cells.size(); ++l) {
      row.h.push_back((hi - lo) / cells[l]);
      row.mu1.push_back(mu[d * cells.size() + l]);
      row.above_one = row.above_one && row.mu1.back() > 1.0;
    }
    const std::size_t m = row.mu1.size();
    if (m >= 2) {
      const double h1 = row.h[m - 2], h2 = row.h[m - 1];
      row.extrapolated = row.mu1[m - 1] + (row.mu1[m - 1] - row.mu1[m - 2]) * h2 / (h1 - h2);
    } else {
      row.extrapolated = row.mu1[0];
    }
    row.above_one = row.above_one && row.extrapolated > 1.0;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace gausseig
