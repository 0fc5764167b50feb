#include "gausseig/weinberger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gausseig/errors.hpp"
#include "gausseig/measure.hpp"
#include "gausseig/radial.hpp"
#include "gausseig/special.hpp"

namespace gausseig {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kAngularNodes = 128;
constexpr double kMeasureMatch = 1e-8;
constexpr double kChainSlack = 1e-9;
constexpr double kMomentTol = 1e-8;

double phi2(double x, double y) { return std::exp(-0.5 * (x * x + y * y)) / kTwoPi; }

// (1 / 2 pi) int_0^rho f(r) r e^{-r^2/2} dr
double radial_piece(const std::function<double(double)>& f, double rho, double kink_r) {
  std::vector<double> pts{0.0};
  if (kink_r > 0.0 && kink_r < rho) pts.push_back(kink_r);
  pts.push_back(rho);
  QuadOptions qo;
  qo.abs_tol = 1e-15;
  qo.rel_tol = 1e-13;
  return quad([&](double r) { return f(r) * r * std::exp(-0.5 * r * r); }, pts, qo) / kTwoPi;
}

ChainLink tolerant_link(std::string name, double lhs, double rhs, double tol) {
  ChainLink l = make_link(std::move(name), lhs, rhs, false);
  l.pass = l.slack >= -tol;
  return l;
}

}  // namespace

double TestProfile::G(double r) const {
  if (r >= R) return w.values()[w.size() - 1];
  return w.value_at(std::max(r, 0.0));
}

double TestProfile::dG(double r) const { return r >= R ? 0.0 : w.derivative_at(std::max(r, 0.0)); }

double TestProfile::Ndens(double r) const {
  if (r <= 0.0) {
    const double d = w.derivative_at(0.0);
    return N * d * d;
  }
  const double d = dG(r), q = G(r) / r;
  return d * d + (N - 1) * q * q;
}

double TestProfile::Ddens(double r) const {
  const double g = G(r);
  return g * g;
}

TestProfile build_profile(int N, double R, double tol) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("build_profile: R must be positive and finite");
  auto ball = mu1_ball(N, R, tol);
  TestProfile p{N, R, ball.mu1, std::move(ball.w)};

  constexpr int kChecks = 400;
  const double top = R + 2.0;
  for (int i = 0; i < kChecks; ++i) {
    const double r0 = top * i / kChecks, r1 = top * (i + 1) / kChecks;
    const bool g_ok = p.G(r1) >= p.G(r0) - 1e-12 && p.G(r0) >= -1e-12;
    const bool n_ok = p.Ndens(r1) < p.Ndens(r0);
    if (!g_ok || !n_ok) {
      std::ostringstream diag;
      diag << "N=" << N << " R=" << R << " r=" << r0 << ".." << r1 << " G=" << p.G(r0) << "," << p.G(r1)
           << " Ndens=" << p.Ndens(r0) << "," << p.Ndens(r1);
      throw SolverError(g_ok ? "build_profile: N(r) is not strictly decreasing" : "build_profile: G is not monotone",
                        diag.str());
    }
  }
  return p;
}

SymmetricDomain2D SymmetricDomain2D::disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disk: radius must be positive and finite");
  SymmetricDomain2D d;
  d.kind_ = DomainKind::disk;
  d.a_ = d.b_ = radius;
  d.measure_ = gauss_measure(Ball{2, radius});
  return d;
}

SymmetricDomain2D SymmetricDomain2D::rectangle(double half_x, double half_y) {
  if (!(half_x > 0.0 && half_y > 0.0) || !std::isfinite(half_x) || !std::isfinite(half_y)) {
    throw DomainError("rectangle: half sides must be positive and finite");
  }
  SymmetricDomain2D d;
  d.kind_ = DomainKind::rectangle;
  d.a_ = half_x;
  d.b_ = half_y;
  const double t = std::atan2(half_y, half_x);
  d.kinks_ = {t, std::numbers::pi - t, std::numbers::pi + t, kTwoPi - t};
  d.measure_ = gauss_interval_mass(-half_x, half_x) * gauss_interval_mass(-half_y, half_y);
  return d;
}

SymmetricDomain2D SymmetricDomain2D::polar(std::function<double(double)> rho, std::vector<double> kinks) {
  SymmetricDomain2D d;
  d.kind_ = DomainKind::polar;
  d.rho_ = std::move(rho);
  for (int i = 0; i < 720; ++i) {
    const double t = kTwoPi * i / 720;
    const double r = d.rho_(t), s = d.rho_(t + std::numbers::pi);
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("polar: rho must be positive and finite");
    if (std::abs(r - s) > 1e-12 * r) throw PreconditionError("polar: domain is not symmetric about the origin");
  }
  for (double k : kinks) {
    if (!(k >= 0.0 && k < kTwoPi)) throw DomainError("polar: kinks must lie in [0, 2 pi)");
  }
  std::sort(kinks.begin(), kinks.end());
  d.kinks_ = std::move(kinks);
  d.measure_ = d.polar_integral([](double) { return 1.0; },
                                [](double rho) { return -std::expm1(-0.5 * rho * rho) / kTwoPi; });
  if (!(d.measure_ < 1.0)) throw DomainError("polar: measure must lie in (0, 1)");
  return d;
}

SymmetricDomain2D SymmetricDomain2D::mask(MaskedGrid2D grid) {
  const double h = grid.h();
  const double cx = grid.x0() + 0.5 * grid.nx() * h, cy = grid.y0() + 0.5 * grid.ny() * h;
  if (std::abs(cx) > 1e-12 * h * grid.nx() || std::abs(cy) > 1e-12 * h * grid.ny()) {
    throw PreconditionError("mask: grid must be centered at the origin");
  }
  if (grid.active_count() == 0) throw DomainError("mask: no active cells");
  for (const auto& [i, j] : grid.cells()) {
    if (!grid.active(grid.nx() - 1 - i, grid.ny() - 1 - j)) {
      throw PreconditionError("mask: domain is not symmetric about the origin");
    }
  }
  if (grid.components() != 1) throw DomainError("mask: active cells are not connected");
  SymmetricDomain2D d;
  d.kind_ = DomainKind::mask;
  for (const auto& [i, j] : grid.cells()) {
    const double x = grid.x0() + i * h, y = grid.y0() + j * h;
    d.measure_ += gauss_interval_mass(x, x + h) * gauss_interval_mass(y, y + h);
  }
  d.grid_ = std::move(grid);
  return d;
}

double SymmetricDomain2D::rho(double theta) const {
  switch (kind_) {
    case DomainKind::disk:
      return a_;
    case DomainKind::rectangle: {
      const double c = std::abs(std::cos(theta)), s = std::abs(std::sin(theta));
      return std::min(c > 0.0 ? a_ / c : kInf, s > 0.0 ? b_ / s : kInf);
    }
    case DomainKind::polar:
      return rho_(theta);
    case DomainKind::mask:
      break;
  }
  throw DomainError("rho: mask domains have no polar description");
}

double SymmetricDomain2D::max_radius() const {
  switch (kind_) {
    case DomainKind::disk:
      return a_;
    case DomainKind::rectangle:
      return std::hypot(a_, b_);
    case DomainKind::polar: {
      double m = 0.0;
      for (int i = 0; i < 1440; ++i) m = std::max(m, rho_(kTwoPi * i / 1440));
      return m;
    }
    case DomainKind::mask:
      return std::hypot(0.5 * grid_.nx() * grid_.h(), 0.5 * grid_.ny() * grid_.h());
  }
  return 0.0;
}

bool SymmetricDomain2D::contains(double x, double y) const {
  if (kind_ == DomainKind::mask) {
    const int i = static_cast<int>(std::floor((x - grid_.x0()) / grid_.h()));
    const int j = static_cast<int>(std::floor((y - grid_.y0()) / grid_.h()));
    return grid_.active(i, j);
  }
  if (kind_ == DomainKind::rectangle) return std::abs(x) < a_ && std::abs(y) < b_;
  return std::hypot(x, y) < rho(std::atan2(y, x));
}

double SymmetricDomain2D::polar_integral(const std::function<double(double)>& angular,
                                         const std::function<double(double)>& piece) const {
  std::vector<double> cuts{0.0};
  cuts.insert(cuts.end(), kinks_.begin(), kinks_.end());
  cuts.push_back(kTwoPi);
  const auto& rule = gauss_legendre(kAngularNodes);
  double total = 0.0;
  for (std::size_t s = 1; s < cuts.size(); ++s) {
    const double lo = cuts[s - 1], hi = cuts[s];
    if (!(hi > lo)) continue;
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int k = 0; k < kAngularNodes; ++k) {
      const double t = c + r * rule.nodes[k];
      acc += rule.weights[k] * angular(t) * piece(rho(t));
    }
    total += r * acc;
  }
  return total;
}

double SymmetricDomain2D::mask_integral(const std::function<double(double, double)>& f) const {
  constexpr int kOrder = 6;
  const auto& rule = gauss_legendre(kOrder);
  const double h = grid_.h(), half = 0.5 * h;
  double total = 0.0;
  for (const auto& [i, j] : grid_.cells()) {
    const double cx = grid_.center_x(i), cy = grid_.center_y(j);
    double acc = 0.0;
    for (int a = 0; a < kOrder; ++a) {
      const double x = cx + half * rule.nodes[a];
      for (int b = 0; b < kOrder; ++b) {
        const double y = cy + half * rule.nodes[b];
        acc += rule.weights[a] * rule.weights[b] * f(x, y) * phi2(x, y);
      }
    }
    total += half * half * acc;
  }
  return total;
}

double SymmetricDomain2D::integrate_radial(const std::function<double(double)>& f, double kink_r) const {
  if (kind_ == DomainKind::mask) return mask_integral([&](double x, double y) { return f(std::hypot(x, y)); });
  if (kind_ == DomainKind::disk) return kTwoPi * radial_piece(f, a_, kink_r);
  return polar_integral([](double) { return 1.0; }, [&](double rho) { return radial_piece(f, rho, kink_r); });
}

std::array<double, 2> SymmetricDomain2D::first_moments(const std::function<double(double)>& g,
                                                       double kink_r) const {
  if (kind_ == DomainKind::mask) {
    auto along = [&](int axis) {
      return mask_integral([&](double x, double y) {
        const double r = std::hypot(x, y);
        return r > 0.0 ? g(r) * (axis == 0 ? x : y) / r : 0.0;
      });
    };
    return {along(0), along(1)};
  }
  auto piece = [&](double rho) { return radial_piece(g, rho, kink_r); };
  return {polar_integral([](double t) { return std::cos(t); }, piece),
          polar_integral([](double t) { return std::sin(t); }, piece)};
}

MaskedGrid2D SymmetricDomain2D::to_mask(int cells) const {
  if (kind_ == DomainKind::mask) return grid_;
  if (cells < 4) throw DomainError("to_mask: need at least four cells across");
  const double half = 1.02 * max_radius();
  const double h = 2.0 * half / cells;
  return MaskedGrid2D(-half, -half, h, cells, cells, [&](double x, double y) { return contains(x, y); });
}

SymmetricDomain2D fit_measure(const std::function<SymmetricDomain2D(double)>& family, double m, double lo,
                              double hi) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("fit_measure: m must lie in (0, 1)");
  if (!(family(lo).measure() <= m && family(hi).measure() >= m)) {
    throw DomainError("fit_measure: target measure not bracketed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (family(mid).measure() < m ? lo : hi) = mid;
  }
  const auto a = family(lo), b = family(hi);
  return std::abs(a.measure() - m) <= std::abs(b.measure() - m) ? a : b;
}

double weinberger_bound(const SymmetricDomain2D& omega, const TestProfile& profile) {
  if (profile.N != 2) throw DomainError("weinberger_bound: planar domains need a two-dimensional profile");
  const double ball = gauss_measure(Ball{2, profile.R});
  if (std::abs(omega.measure() - ball) > kMeasureMatch) {
    throw PreconditionError("weinberger_bound: domain and ball have different Gaussian measure");
  }
  const double num = omega.integrate_radial([&](double r) { return profile.Ndens(r); }, profile.R);
  const double den = omega.integrate_radial([&](double r) { return profile.Ddens(r); }, profile.R);
  return num / den;
}

WeinbergerReport szego_weinberger_check(const SymmetricDomain2D& omega, const WeinbergerOptions& opt) {
  WeinbergerReport rep;
  rep.measure = omega.measure();
  rep.R = ball_radius_for_measure(2, rep.measure);
  const TestProfile p = build_profile(2, rep.R, opt.tol);
  rep.mu1_ball = p.mu1_ball;

  auto Nf = [&](double r) { return p.Ndens(r); };
  auto Df = [&](double r) { return p.Ddens(r); };
  rep.N_domain = omega.integrate_radial(Nf, rep.R);
  rep.D_domain = omega.integrate_radial(Df, rep.R);
  rep.N_ball = radial_measure_constant(2) * kTwoPi * radial_piece(Nf, rep.R, 0.0);
  rep.D_ball = radial_measure_constant(2) * kTwoPi * radial_piece(Df, rep.R, 0.0);
  rep.bound = weinberger_bound(omega, p);
  rep.moments = omega.first_moments([&](double r) { return p.G(r); }, rep.R);

  switch (omega.kind()) {
    case DomainKind::disk:
      rep.mu1_domain = p.mu1_ball;
      break;
    case DomainKind::rectangle: {
      const auto [a, b] = omega.half_sides();
      rep.mu1_domain = tensor_eigs({-a, a}, {-b, b}, 2, opt.tol).eigenvalues[1];
      break;
    }
    case DomainKind::polar:
      rep.mu1_domain = masked_eigs(omega.to_mask(opt.mask_cells), 2, opt.tol).eigenvalues[1];
      break;
    case DomainKind::mask:
      rep.mu1_domain = masked_eigs(omega.grid(), 2, opt.tol).eigenvalues[1];
      break;
  }

  rep.equality = std::abs(rep.bound - rep.mu1_ball) <= kChainSlack;
  rep.links.push_back(tolerant_link("mu1(Omega) <= bound", rep.mu1_domain, rep.bound * (1.0 + opt.discretization), 0.0));
  rep.links.push_back(tolerant_link("bound <= mu1(B_R)", rep.bound, rep.mu1_ball, kChainSlack));
  rep.links.push_back(tolerant_link("int_Omega N <= int_B N", rep.N_domain, rep.N_ball, kChainSlack));
  rep.links.push_back(tolerant_link("int_B D <= int_Omega D", rep.D_ball, rep.D_domain, kChainSlack));
  rep.links.push_back(tolerant_link("|int P_1| <= 1e-8", std::abs(rep.moments[0]), kMomentTol, 0.0));
  rep.links.push_back(tolerant_link("|int P_2| <= 1e-8", std::abs(rep.moments[1]), kMomentTol, 0.0));
  rep.ok = std::all_of(rep.links.begin(), rep.links.end(), [](const ChainLink& l) { return l.pass; });
  return rep;
}

}  // namespace gausseig
