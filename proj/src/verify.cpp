#include "gausseig/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gausseig/bounds.hpp"
#include "gausseig/errors.hpp"
#include "gausseig/grid2d.hpp"
#include "gausseig/measure.hpp"
#include "gausseig/parallel.hpp"
#include "gausseig/radial.hpp"
#include "gausseig/rearrange.hpp"
#include "gausseig/special.hpp"
#include "gausseig/sturm1d.hpp"
#include "gausseig/weinberger.hpp"

namespace gausseig {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// Random interval (a, b) with gamma(a, b) < 1: bounded, left half-line or right half-line.
Interval1D random_interval(std::mt19937_64& rng, int kind) {
  std::uniform_real_distribution<double> U(-2.5, 2.5);
  double a = U(rng), b = U(rng);
  if (a > b) std::swap(a, b);
  if (b - a < 0.3) b = a + 0.3;
  if (kind == 1) return {-kInf, b};
  if (kind == 2) return {a, kInf};
  return {a, b};
}

Eigen::VectorXd random_grid(const Interval1D& iv, int n) {
  const double lo = iv.left_finite() ? iv.a : iv.b - 4.0;
  const double hi = iv.right_finite() ? iv.b : iv.a + 4.0;
  return linspace(n, lo, hi);
}

// 1. Hermite spectrum
void hermite(CriterionResult& r, const VerifyConfig& cfg) {
  const auto mu = eig1d_values({-8.0, 8.0}, Boundary::neumann, 5, cfg.tol);
  for (int n = 0; n < 5; ++n) r.checks.push_back(check_close("mu_" + std::to_string(n) + "(-8, 8) = " + std::to_string(n), mu[n], n, 1e-6));
}

// 2. mu_1 - lambda_1 = 1
void gap(CriterionResult& r, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<Interval1D> ivs;
  for (int i = 0; i < 20; ++i) ivs.push_back(random_interval(rng, i < 12 ? 0 : (i < 16 ? 1 : 2)));
  const auto gaps = parallel_map(ivs, [&](const Interval1D& iv) { return neumann_dirichlet_gap(iv, cfg.tol); },
                                 cfg.workers);
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    r.checks.push_back(check_close("gap on (" + fmt(ivs[i].a) + ", " + fmt(ivs[i].b) + ")", gaps[i], 1.0, 2e-9));
  }
}

// 3. sliding intervals of fixed measure
void slide(CriterionResult& r, const VerifyConfig& cfg) {
  constexpr int kSteps = 60, kMid = kSteps / 2;
  for (double L : {0.3, 0.5, 0.7}) {
    // Phi(a) = 1 - t_i with t_i = (1 - L) i / 60: from the left half-line (i = 0) to the right one (i = 60)
    std::vector<double> a_grid;
    for (int i = 0; i < kSteps; ++i) {
      a_grid.push_back(i == 0 ? -kInf : phi_inverse(1.0 - (1.0 - L) * i / kSteps));
    }
    SolverOptions opt;
    opt.workers = cfg.workers;
    std::vector<double> mu;
    for (const auto& p : slide_profile(L, a_grid, cfg.tol, opt)) mu.push_back(p.mu1);
    mu.push_back(mu1_interval({phi_inverse(L), kInf}, cfg.tol));

    const std::string tag = "L=" + fmt(L) + ": ";
    double worst_step = kInf;
    for (int i = 0; i < kMid; ++i) worst_step = std::min(worst_step, mu[i + 1] - mu[i]);
    r.checks.push_back(check_below(tag + "min step left of the symmetric interval > 0", 0.0, worst_step));
    const double others = std::max(*std::max_element(mu.begin(), mu.begin() + kMid),
                                   *std::max_element(mu.begin() + kMid + 1, mu.end()));
    r.checks.push_back(check_at_most(tag + "max elsewhere <= mu_1(symmetric)", others, mu[kMid]));
    const double rest = *std::min_element(mu.begin() + 1, mu.end() - 1);
    r.checks.push_back(check_at_most(tag + "mu_1(left half-line) <= interior minimum", mu.front(), rest));
    r.checks.push_back(check_at_most(tag + "mu_1(right half-line) <= interior minimum", mu.back(), rest));
  }
}

// 4. the square T
void square(CriterionResult& r, const VerifyConfig& cfg) {
  const double lo = square_lo(), hi = square_hi();
  r.checks.push_back(check_close("mu_1(sqrt(3-sqrt6), sqrt(3+sqrt6)) = 5", mu1_interval({lo, hi}, cfg.tol), 5.0, 1e-8));
  const auto t = tensor_eigs({lo, hi}, {lo, hi}, 4, cfg.tol).eigenvalues;
  r.checks.push_back(check_close("tensor mu_1(T) = 5", t[1], 5.0, 1e-8));
  r.checks.push_back(check_close("tensor mu_2(T) = 5", t[2], 5.0, 1e-8));
  r.checks.push_back(check_below("multiplicity 2: mu_3(T) > 5", 5.0, t[3], 1e-3));
}

// 5. printed constants
void constants(CriterionResult& r, const VerifyConfig&) {
  const double e = std::exp(-0.5);
  const double k1 = k_bound(2, 1.0);
  r.checks.push_back(check_close("k(1) = (2-2e^{-1/2})/(2-3e^{-1/2})", k1, (2 - 2 * e) / (2 - 3 * e), 1e-9));
  r.checks.push_back(check_close("k(1) = 4.362 to 3 decimals", k1, 4.362, 5e-4));
  const double Rb = rbar();
  r.checks.push_back(check_close("h(Rbar) = 7.210 to 3 decimals", h_bound(2, Rb), 7.210, 5e-4));
  r.checks.push_back(check_close("Rbar = 1.585 to 3 decimals", Rb, 1.585, 5e-4));
  r.checks.push_back(check_close("k(Rbar) = 1.705 to 3 decimals", k_bound(2, Rb), 1.705, 5e-4));
  r.checks.push_back(check_close("h(1 + pi/sqrt8) = 2", h_bound(2, 1.0 + kPi / std::sqrt(8.0)), 2.0, 1e-14));
}

std::vector<double> lemma_radii(int N) {
  // 6 radii in J1, 7 in J2, 7 in J3
  const double s = std::sqrt(N - 1.0), j2 = s + kPi / std::sqrt(8.0);
  std::vector<double> R;
  for (int i = 1; i <= 6; ++i) R.push_back(s * i / 6.0);
  for (int i = 1; i <= 7; ++i) R.push_back(s + (j2 - s) * i / 7.0);
  for (int i = 1; i <= 7; ++i) R.push_back(j2 + 0.6 * i);
  return R;
}

// 6. nu_1 below tau_1 and k(R)
void lemma(CriterionResult& r, const VerifyConfig& cfg) {
  for (int N : {2, 3, 5}) {
    const auto radii = lemma_radii(N);
    const auto vals = parallel_map(
        radii, [&](double R) { return std::pair{nu1(N, R, cfg.tol), tau1(N, R, cfg.tol)}; }, cfg.workers);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const std::string tag = "N=" + std::to_string(N) + " R=" + fmt(radii[i]) + " (" +
                              to_string(regime_of(N, radii[i])) + "): ";
      r.checks.push_back(check_below(tag + "nu1 < tau1", vals[i].first, vals[i].second, kStrictSlack));
      r.checks.push_back(check_at_most(tag + "nu1 <= k(R)", vals[i].first, k_bound(N, radii[i]), kStrictSlack));
    }
  }
}

// 7. radial anchors
void anchors(CriterionResult& r, const VerifyConfig& cfg) {
  SolverOptions opt;
  opt.radial_truncation = 12.0;
  for (int N : {2, 3, 5}) {
    const auto res = radial_eigs({N, 0, kInf, Boundary::neumann}, 2, cfg.tol, opt);
    const auto& f = res[1].eigenfunction;
    const std::string tag = "N=" + std::to_string(N) + ": ";
    r.checks.push_back(check_close(tag + "tau1(inf) = 2", res[1].value, 2.0, 1e-4));
    const double sign = f.values()[0] < 0 ? 1.0 : -1.0;  // r^2 - N is negative at the origin
    const double c = radial_measure_constant(N);
    const double dist2 = c * integrate_on_grid(f.grid(), 0.0, 12.0, [&](double x) {
      const double g = (x * x - N) / std::sqrt(2.0 * N);
      const double d = sign * f.value_at(x) - g;
      return d * d * std::pow(x, N - 1) * std::exp(-0.5 * x * x);
    });
    r.checks.push_back(check_at_most(tag + "||g - (r^2-N)/sqrt(2N)|| <= 1e-3", std::sqrt(dist2), 1e-3));
    const double lam = radial_eig_values({N, 0, std::sqrt(double(N)), Boundary::dirichlet}, 1, cfg.tol)[0];
    r.checks.push_back(check_close(tag + "lambda_1(B_sqrtN) = 2", lam, 2.0, 1e-6));
  }
}

// 8. asymptotic sharpness
void sharpness(CriterionResult& r, const VerifyConfig& cfg) {
  std::vector<double> err;
  for (double R : {4.0, 6.0, 8.0, 12.0}) {
    err.push_back(std::abs(nu1(2, R, cfg.tol) - 1.0));
  }
  r.checks.push_back(check_at_most("|nu1(12) - 1| <= 1e-3", err.back(), 1e-3));
  const double Rs[] = {4, 6, 8, 12};
  for (std::size_t i = 1; i < err.size(); ++i) {
    r.checks.push_back(check_below("|nu1(" + fmt(Rs[i]) + ") - 1| < |nu1(" + fmt(Rs[i - 1]) + ") - 1|", err[i], err[i - 1]));
  }
}

// 9. shape derivatives
void shape(CriterionResult& r, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 9);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Interval1D> ivs;
  for (int i = 0; i < 10; ++i) {
    const double a = -2.0 + 2.5 * U(rng);
    ivs.push_back({a, a + 0.5 + 1.5 * U(rng)});
  }
  const auto d1 = parallel_map(ivs, [&](const Interval1D& iv) { return shape_derivative_1d(iv, cfg.tol); }, cfg.workers);
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const double rel = std::abs(d1[i].formula - d1[i].fd) / std::abs(d1[i].fd);
    r.checks.push_back(check_at_most("1D (" + fmt(ivs[i].a) + ", " + fmt(ivs[i].b) + ") relative error", rel, 1e-4));
  }

  struct Config {
    int N;
    double R;
    int k;
  };
  std::vector<Config> cs;
  const int dims[] = {2, 3, 5};
  for (int i = 0; i < 10; ++i) cs.push_back({dims[i % 3], 1.0 + 3.0 * U(rng), 1 + i % 2});
  const auto dr = parallel_map(cs, [&](const Config& c) { return shape_derivative_radial(c.N, c.R, c.k, cfg.tol); },
                               cfg.workers);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string tag = "radial N=" + std::to_string(cs[i].N) + " R=" + fmt(cs[i].R) + " k=" + std::to_string(cs[i].k);
    const double rel = std::abs(dr[i].formula - dr[i].fd) / std::abs(dr[i].fd);
    r.checks.push_back(check_at_most(tag + " relative error", rel, 1e-4));
    r.checks.push_back(check_below(tag + " derivative < 0", dr[i].formula, 0.0));
    r.checks.push_back(check_below(tag + " finite difference < 0", dr[i].fd, 0.0));
  }
}

struct NamedDomain {
  std::string name;
  SymmetricDomain2D omega;
};

std::vector<NamedDomain> theorem_domains() {
  std::vector<NamedDomain> out;
  for (double m : {0.3, 0.5, 0.7}) {
    const double a = phi_inverse(0.5 * (1.0 - std::sqrt(m)));
    out.push_back({"square m=" + fmt(m), SymmetricDomain2D::rectangle(a, a)});
  }
  auto star = [](double amp, int lobes) {
    return [=](double c) {
      return SymmetricDomain2D::polar([=](double t) { return c * (1.0 + amp * std::cos(lobes * t)); });
    };
  };
  for (double m : {0.3, 0.5, 0.7}) out.push_back({"star 1+0.3cos2t m=" + fmt(m), fit_measure(star(0.3, 2), m, 0.05, 6.0)});
  out.push_back({"star 1+0.2cos4t m=0.5", fit_measure(star(0.2, 4), 0.5, 0.05, 6.0)});
  auto annulus = [](double r2) {
    return SymmetricDomain2D::mask(MaskedGrid2D(-2.0, -2.0, 0.025, 160, 160, [=](double x, double y) {
      const double r = std::hypot(x, y);
      return r > 0.3 && r < r2;
    }));
  };
  for (double m : {0.3, 0.5}) out.push_back({"annulus mask m~" + fmt(m), fit_measure(annulus, m, 0.6, 1.99)});
  out.push_back({"disk m=0.5", SymmetricDomain2D::disk(ball_radius_for_measure(2, 0.5))});
  return out;
}

// 10. symmetric planar domains against the ball
void theorem(CriterionResult& r, const VerifyConfig& cfg) {
  const auto domains = theorem_domains();
  WeinbergerOptions wo;
  wo.tol = std::min(cfg.tol, 1e-10);
  const auto reps = parallel_map(domains, [&](const NamedDomain& d) { return szego_weinberger_check(d.omega, wo); },
                                 cfg.workers);
  for (std::size_t i = 0; i < domains.size(); ++i) {
    const auto& rep = reps[i];
    for (const auto& l : rep.links) r.checks.push_back({domains[i].name + ": " + l.name, l.pass, l.lhs, l.rhs, l.slack});
    const bool is_disk = domains[i].omega.kind() == DomainKind::disk;
    const double gap = std::abs(rep.bound - rep.mu1_ball);
    r.checks.push_back(is_disk ? check_at_most(domains[i].name + ": equality detected", gap, 1e-9)
                               : check_below(domains[i].name + ": no equality", 1e-9, gap));
    r.checks.back().pass = r.checks.back().pass && rep.equality == is_disk;
  }
}

// 11. counterexample
void counterexample(CriterionResult& r, const VerifyConfig& cfg) {
  const double side = square_hi() - square_lo();
  const auto rep = counterexample_run({0.2, 0.1, 0.05}, {side / 80, side / 160}, cfg.tol, cfg.workers);
  r.checks.push_back(check_close("mu_1(T) = 5 (delta = 0 row)", rep.square_mu1, 5.0, 1e-8));
  r.checks.push_back(check_close("mu_1(half-space of measure gamma(T)) = 1", rep.half_space_mu1, 1.0, 1e-8));
  r.checks.push_back(check_at_most("mu_1(c, inf) >= 1 at c = " + fmt(rep.half_space_threshold), 1.0, rep.half_line_mu1));
  for (const auto& row : rep.rows) {
    const std::string tag = "delta=" + fmt(row.delta) + ": ";
    for (std::size_t l = 0; l < row.h.size(); ++l) {
      r.checks.push_back(check_below(tag + "mu_1 at h=" + fmt(row.h[l]) + " > 1", 1.0, row.mu1[l]));
    }
    r.checks.push_back(check_below(tag + "extrapolated mu_1 > 1", 1.0, row.extrapolated));
    if (row.delta == 0.05) {
      r.checks.push_back(check_close(tag + "extrapolated mu_1 within 10% of 5", row.extrapolated, 5.0, 0.5));
    }
  }
}

// 12. rearrangements
void rearrangement(CriterionResult& r, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 12);
  std::normal_distribution<double> Z;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto samples = [&](const Eigen::VectorXd& g) {
    Eigen::VectorXd v(g.size());
    for (auto& x : v) x = Z(rng);
    return SampledFunction(g, v);
  };

  double worst[2] = {0.0, 0.0};
  for (int t = 0; t < 100; ++t) {
    const Interval1D iv = random_interval(rng, t % 3);
    const auto rf = rearrange(samples(random_grid(iv, 40 + t)), iv);
    for (int p = 1; p <= 2; ++p) {
      const double a = rf.source_norm(p), b = rf.rearranged_norm(p);
      worst[p - 1] = std::max(worst[p - 1], std::abs(a - b) / std::max(1.0, a));
    }
  }
  r.checks.push_back(check_at_most("L1 norm preserved (worst of 100)", worst[0], 1e-10));
  r.checks.push_back(check_at_most("L2 norm preserved (worst of 100)", worst[1], 1e-10));

  double lower = kInf, upper = kInf;
  for (int t = 0; t < 100; ++t) {
    const Interval1D iv = random_interval(rng, t % 3);
    const auto g = random_grid(iv, 30 + t);
    const auto hl = hardy_littlewood_gap(weigh_samples(samples(g), iv), weigh_samples(samples(g), iv));
    lower = std::min(lower, hl.lower_slack);
    upper = std::min(upper, hl.upper_slack);
  }
  r.checks.push_back(check_at_most("Hardy-Littlewood lower slack >= -1e-10 (worst of 100)", -1e-10, lower));
  r.checks.push_back(check_at_most("Hardy-Littlewood upper slack >= -1e-10 (worst of 100)", -1e-10, upper));

  double ps = kInf;
  for (int t = 0; t < 50; ++t) {
    const Interval1D iv = random_interval(rng, t % 3);
    const auto g = random_grid(iv, 12 + t % 40);
    Eigen::VectorXd v(g.size());
    for (auto& x : v) x = U(rng);
    if (iv.left_finite()) v[0] = 0.0;
    if (iv.right_finite()) v[v.size() - 1] = 0.0;
    ps = std::min(ps, polya_szego_gap(SampledFunction(g, v), iv).gap);
  }
  r.checks.push_back(check_at_most("Polya-Szego gap >= -1e-8 (worst of 50)", -1e-8, ps));
}

// 13. isoperimetric inequality
void isoperimetric(CriterionResult& r, const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 13);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_iv = kInf, worst_ball = kInf;
  const int dims[] = {2, 3, 5};
  for (int t = 0; t < 1000; ++t) {
    Domain d;
    int dim = 1;
    if (t % 2 == 0) {
      d = random_interval(rng, t % 3);
    } else {
      dim = dims[t % 3];
      d = Ball{dim, 0.2 + 3.0 * U(rng)};
    }
    const double m = gauss_measure(d);
    const double slack = gauss_perimeter(d) - gauss_perimeter(half_space_rearranged(m, dim));
    (dim == 1 ? worst_iv : worst_ball) = std::min(dim == 1 ? worst_iv : worst_ball, slack);
  }
  r.checks.push_back(check_at_most("P(interval) >= P(half-line), worst of 500", -1e-12, worst_iv));
  r.checks.push_back(check_at_most("P(ball) >= P(half-space), worst of 500", -1e-12, worst_ball));

  for (double L : {0.3, 0.5, 0.7}) {
    const double b_sym = phi_inverse(0.5 * (1 - L));
    const double symmetric = gauss_perimeter(Interval1D(-b_sym, b_sym));
    double best = 0.0;
    for (int i = 0; i <= 60; ++i) {
      const double frac = (1.0 - L) * i / 60.0;
      const Interval1D iv = i == 0 ? Interval1D(-kInf, b_of_a(-kInf, L))
                            : i == 60 ? Interval1D(phi_inverse(L), kInf)
                                      : Interval1D(phi_inverse(1.0 - frac), b_of_a(phi_inverse(1.0 - frac), L));
      if (i != 30) best = std::max(best, gauss_perimeter(iv));
    }
    r.checks.push_back(check_below("L=" + fmt(L) + ": perimeter maximal at the symmetric interval", best, symmetric));
  }
}

}  // namespace

Check check_at_most(std::string name, double lhs, double rhs, double tol) {
  const double slack = rhs - lhs;
  return {std::move(name), slack >= -tol, lhs, rhs, slack};
}

Check check_below(std::string name, double lhs, double rhs, double margin) {
  const double slack = rhs - lhs;
  return {std::move(name), slack > margin, lhs, rhs, slack};
}

Check check_close(std::string name, double value, double target, double tol) {
  const double err = std::abs(value - target);
  return {std::move(name), err <= tol, err, tol, tol - err};
}

bool CriterionResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const char* criterion_title(int id) {
  static const char* titles[] = {"Hermite spectrum on (-8, 8)",
                                 "Neumann-Dirichlet gap mu_1 - lambda_1 = 1",
                                 "sliding intervals of fixed measure",
                                 "square constant mu_1(T) = 5, double",
                                 "constants k(1), h(Rbar), Rbar, k(Rbar), h(1 + pi/sqrt8)",
                                 "radial versus angular eigenvalues",
                                 "radial anchors tau_1(inf) = 2 and lambda_1(B_sqrtN) = 2",
                                 "asymptotic sharpness nu_1(R) -> 1",
                                 "shape derivatives",
                                 "ball maximizes mu_1 among symmetric planar domains",
                                 "rounded-square counterexample",
                                 "rearrangement properties",
                                 "Gaussian isoperimetric inequality"};
  if (id < 1 || id > kCriteria) throw DomainError("criterion id out of range");
  return titles[id - 1];
}

CriterionResult run_criterion(int id, const VerifyConfig& cfg) {
  using Runner = void (*)(CriterionResult&, const VerifyConfig&);
  static const Runner runners[] = {hermite, gap,       slide,          square,        constants,     lemma,        anchors,
                                   sharpness, shape, theorem, counterexample, rearrangement, isoperimetric};
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  const auto start = std::chrono::steady_clock::now();
  runners[id - 1](r, cfg);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(const VerifyConfig& cfg) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, cfg));
  return out;
}

}  // namespace gausseig
