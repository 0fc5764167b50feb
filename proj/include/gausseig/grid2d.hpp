#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <functional>
#include <vector>

#include "gausseig/interval.hpp"

namespace gausseig {

/// Uniform square cells of side h over a box; a cell is active when its center lies in the domain.
///
/// Active cells are numbered row by row. cell_weight is phi_2 at the center times h^2;
/// each interior face between two active cells carries phi_2 at its midpoint times h.
class MaskedGrid2D {
 public:
  struct Face {
    int p, q;       // active-cell numbers
    double weight;  // phi_2(face midpoint) * h
  };

  MaskedGrid2D() = default;
  MaskedGrid2D(double x0, double y0, double h, int nx, int ny, const std::function<bool(double, double)>& inside);

  double h() const { return h_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  int active_count() const { return static_cast<int>(cells_.size()); }
  bool active(int i, int j) const { return number(i, j) >= 0; }
  /// Active-cell number of cell (i, j), or -1.
  int number(int i, int j) const;
  // measured from the grid midpoint so mirrored cells of a centered grid get opposite centers
  double center_x(int i) const { return (x0_ + 0.5 * nx_ * h_) + (i + 0.5 - 0.5 * nx_) * h_; }
  double center_y(int j) const { return (y0_ + 0.5 * ny_ * h_) + (j + 0.5 - 0.5 * ny_) * h_; }

  /// (i, j) of each active cell in numbering order.
  const std::vector<std::pair<int, int>>& cells() const { return cells_; }
  const Eigen::VectorXd& cell_weight() const { return cell_weight_; }
  const std::vector<Face>& faces() const { return faces_; }

  /// Number of 4-connected components of the active cells.
  int components() const;

 private:
  double x0_ = 0.0, y0_ = 0.0, h_ = 1.0;
  int nx_ = 0, ny_ = 0;
  std::vector<int> number_;
  std::vector<std::pair<int, int>> cells_;
  Eigen::VectorXd cell_weight_;
  std::vector<Face> faces_;
};

/// Stiffness A (face-weighted differences, natural Neumann boundary) and the diagonal of M.
struct Assembly {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd mass;
};

Assembly assemble(const MaskedGrid2D& g);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending, with multiplicity
  Eigen::VectorXd first_mode;       // first nontrivial eigenvector, one value per active cell, unit M-norm
  double h = 0.0;
  int active_cells = 0;
};

/// Product-domain spectrum: every sum mu_i(ivx) + mu_j(ivy) of one-dimensional Neumann eigenvalues.
SpectrumResult tensor_eigs(const Interval1D& ivx, const Interval1D& ivy, int count, double tol);

/// Cells at or below this count are solved densely.
inline constexpr int kDenseCellLimit = 1200;

/// First `count` eigenvalues of A u = mu M u on the active cells, mu_0 = 0 included.
SpectrumResult masked_eigs(const MaskedGrid2D& g, int count, double tol);

/// Side ends of the square T = (sqrt(3 - sqrt6), sqrt(3 + sqrt6))^2.
double square_lo();
double square_hi();

/// Upper edge of T_delta: flat, then a quarter circle of radius delta at the corner x = y = square_hi().
double rounded_edge(double x, double delta);

/// T with its upper-right corner rounded at radius delta, on `cells` cells per side of T; delta = 0 gives T.
MaskedGrid2D rounded_square(double delta, int cells = 80);

struct CounterexampleRow {
  double delta;
  std::vector<double> h;
  std::vector<double> mu1;
  double extrapolated;  // first order in h from the two finest levels
  bool above_one;
};

struct CounterexampleReport {
  double square_mu1;       // tensor value on T
  int square_multiplicity;  // copies of square_mu1 among the tensor eigenvalues
  double half_space_mu1;   // first nontrivial eigenvalue of the half-space of measure gamma(T)
  double half_space_threshold;
  double half_line_mu1;  // mu_1(threshold, inf), at least 1
  std::vector<CounterexampleRow> rows;
};

/// mu_1(T_delta) over deltas and grid spacings, with the half-space comparison.
/// Grid spacings are rounded to the nearest h with a whole number of cells across T.
CounterexampleReport counterexample_run(const std::vector<double>& deltas, const std::vector<double>& h_levels,
                                        double tol, unsigned workers = 1);

}  // namespace gausseig
