#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gausseig/bounds.hpp"
#include "gausseig/errors.hpp"
#include "gausseig/grid2d.hpp"
#include "gausseig/measure.hpp"
#include "gausseig/radial.hpp"
#include "gausseig/special.hpp"
#include "gausseig/sturm1d.hpp"
#include "gausseig/verify.hpp"
#include "gausseig/weinberger.hpp"

namespace gausseig::cli {
namespace {

const std::set<std::string> kCommands = {"eig1d",           "slide",      "radial",         "ball",
                                         "bounds",          "lemma",      "rearrange-check", "weinberger",
                                         "counterexample",  "shape-deriv", "verify-all"};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// JSON has no infinities; they travel as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

bool numeric_or_nonfinite(const json& v) {
  return v.is_number() || (v.is_string() && (v == "inf" || v == "-inf" || v == "nan"));
}

double parse_real(const std::string& s, const char* what) {
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw UsageError(std::string(what) + ": not a number: " + s);
  return v;
}

Boundary parse_bc(const std::string& s) { return s == "dirichlet" ? Boundary::dirichlet : Boundary::neumann; }

struct Doc {
  std::string command;
  json results = json::array();
  json checks = json::array();

  void check(const Check& c) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)},
                      {"slack", num(c.slack)}});
  }
  void link(const ChainLink& l) { check({l.name, l.pass, l.lhs, l.rhs, l.slack}); }
  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c["pass"].get<bool>()) return false;
    }
    return true;
  }
};

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions opt;
  opt.trunc_weight = c.trunc_weight;
  opt.samples = c.samples;
  opt.workers = c.parallelism;
  return opt;
}

void increasing_checks(Doc& d, const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    d.check(check_below("eigenvalue " + std::to_string(i) + " > eigenvalue " + std::to_string(i - 1), v[i - 1], v[i]));
  }
}

// Per-subcommand arguments, bound to CLI11 options before parsing.
struct Args {
  std::string a = "-inf", b = "inf", R = "1";
  std::string bc = "neumann";
  int count = 3;
  double L = 0.5;
  int N = 2, k = 0, k_index = 1;
  std::string shape = "disk";
  double measure = 0.5, amp = 0.3, inner = 0.3;
  int lobes = 2;
  std::vector<double> deltas{0.2, 0.1, 0.05};
  std::vector<int> cells{80, 160};
  int criterion = 0;
  bool radial = false;
};

void cmd_eig1d(Doc& d, const Args& a, const RunConfig& c) {
  const Interval1D iv(parse_real(a.a, "--a"), parse_real(a.b, "--b"));
  const auto bc = parse_bc(a.bc);
  const auto res = eig1d(iv, bc, a.count, c.tol, solver_options(c));
  std::vector<double> vals;
  for (std::size_t i = 0; i < res.size(); ++i) {
    const int index = int(i) + (bc == Boundary::dirichlet ? 1 : 0);
    d.results.push_back({{"index", index}, {"value", res[i].value}, {"nodes", res[i].nodes}});
    vals.push_back(res[i].value);
  }
  increasing_checks(d, vals);
}

void cmd_slide(Doc& d, const Args& a, const RunConfig& c) {
  const int n = c.slide_points;
  if (n < 4 || n % 2) throw UsageError("slide_points must be even and at least 4");
  if (!(a.L > 0.0 && a.L < 1.0)) throw UsageError("--L must lie in (0, 1)");
  std::vector<double> grid;
  for (int i = 0; i < n; ++i) grid.push_back(i == 0 ? -kInf : phi_inverse(1.0 - (1.0 - a.L) * i / n));
  auto pts = slide_profile(a.L, grid, c.tol, solver_options(c));
  pts.push_back({phi_inverse(a.L), kInf, mu1_interval({phi_inverse(a.L), kInf}, c.tol, solver_options(c))});
  std::vector<double> mu;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    d.results.push_back({{"i", i}, {"a", num(pts[i].a)}, {"b", num(pts[i].b)}, {"mu1", pts[i].mu1}});
    mu.push_back(pts[i].mu1);
  }
  const int mid = n / 2;
  double step = kInf, others = -kInf;
  for (int i = 0; i < mid; ++i) step = std::min(step, mu[i + 1] - mu[i]);
  for (int i = 0; i <= n; ++i) {
    if (i != mid) others = std::max(others, mu[i]);
  }
  const double interior = *std::min_element(mu.begin() + 1, mu.end() - 1);
  d.check(check_below("increasing left of the symmetric interval (min step)", 0.0, step));
  d.check(check_at_most("maximal at the symmetric interval", others, mu[mid]));
  d.check(check_at_most("left half-line minimal", mu.front(), interior));
  d.check(check_at_most("right half-line minimal", mu.back(), interior));
}

void cmd_radial(Doc& d, const Args& a, const RunConfig& c) {
  const RadialProblem p{a.N, a.k, parse_real(a.R, "--R"), parse_bc(a.bc)};
  const auto res = radial_eigs(p, a.count, c.tol, solver_options(c));
  std::vector<double> vals;
  for (std::size_t i = 0; i < res.size(); ++i) {
    d.results.push_back({{"index", i}, {"value", res[i].value}, {"nodes", res[i].nodes}});
    vals.push_back(res[i].value);
  }
  increasing_checks(d, vals);
}

void cmd_ball(Doc& d, const Args& a, const RunConfig& c) {
  const double R = parse_real(a.R, "--R");
  const auto b = mu1_ball(a.N, R, c.tol, solver_options(c));
  d.results.push_back({{"N", a.N},
                       {"R", num(R)},
                       {"measure", gauss_measure(Ball{a.N, R})},
                       {"mu1", b.mu1},
                       {"tau1", b.tau1},
                       {"k2_first", b.k2_first},
                       {"rayleigh", b.rayleigh}});
  d.check(check_below("nu1 < tau1", b.mu1, b.tau1, kStrictSlack));
  d.check(check_below("nu1 < first k = 2 eigenvalue", b.mu1, b.k2_first, kStrictSlack));
  d.check(check_close("Rayleigh quotient of the profile = nu1", b.rayleigh, b.mu1, 1e-6 * std::max(1.0, b.mu1)));
}

void cmd_bounds(Doc& d, const Args& a, const RunConfig&) {
  const double R = parse_real(a.R, "--R");
  json row = {{"N", a.N}, {"R", num(R)}, {"regime", to_string(regime_of(a.N, R))}, {"k", k_bound(a.N, R)}};
  row["h"] = R > std::sqrt(a.N - 1.0) ? num(h_bound(a.N, R)) : json(nullptr);
  row["Rbar"] = rbar();
  d.results.push_back(row);
}

void cmd_lemma(Doc& d, const Args& a, const RunConfig& c) {
  const auto rep = lemma_chain(a.N, parse_real(a.R, "--R"), solver_handles(c.tol));
  json row = {{"N", rep.N},         {"R", num(rep.R)},     {"regime", to_string(rep.regime)},
              {"branch", rep.branch}, {"nu1", rep.nu1},      {"tau1", rep.tau1},
              {"k", rep.k_val},       {"chain_ok", rep.chain_ok}};
  row["h"] = rep.h_val ? num(*rep.h_val) : json(nullptr);
  row["r0"] = rep.r0 ? num(*rep.r0) : json(nullptr);
  d.results.push_back(row);
  for (const auto& l : rep.links) d.link(l);
}

VerifyConfig verify_config(const RunConfig& c) { return {c.tol, c.parallelism, c.seed}; }

void cmd_rearrange(Doc& d, const Args&, const RunConfig& c) {
  const auto r = run_criterion(12, verify_config(c));
  for (const auto& ch : r.checks) {
    d.results.push_back({{"property", ch.name}, {"lhs", num(ch.lhs)}, {"rhs", num(ch.rhs)}, {"pass", ch.pass}});
    d.check(ch);
  }
}

SymmetricDomain2D weinberger_domain(const Args& a, const RunConfig&) {
  const double m = a.measure;
  if (!(m > 0.0 && m < 1.0)) throw UsageError("--measure must lie in (0, 1)");
  if (a.shape == "disk") return SymmetricDomain2D::disk(ball_radius_for_measure(2, m));
  if (a.shape == "square") {
    const double s = phi_inverse(0.5 * (1.0 - std::sqrt(m)));
    return SymmetricDomain2D::rectangle(s, s);
  }
  if (a.shape == "star") {
    const double amp = a.amp;
    const int lobes = a.lobes;
    if (lobes % 2) throw UsageError("--lobes must be even for a centrally symmetric star");
    return fit_measure(
        [=](double s) {
          return SymmetricDomain2D::polar([=](double t) { return s * (1.0 + amp * std::cos(lobes * t)); });
        },
        m, 0.05, 6.0);
  }
  // annulus {inner < |x| < r2} as a mask
  const double inner = a.inner;
  return fit_measure(
      [=](double r2) {
        return SymmetricDomain2D::mask(MaskedGrid2D(-2.0, -2.0, 0.025, 160, 160, [=](double x, double y) {
          const double r = std::hypot(x, y);
          return r > inner && r < r2;
        }));
      },
      m, inner + 0.3, 1.99);
}

void cmd_weinberger(Doc& d, const Args& a, const RunConfig& c) {
  const auto omega = weinberger_domain(a, c);
  WeinbergerOptions wo;
  wo.tol = c.tol;
  wo.mask_cells = c.mask_cells;
  const auto rep = szego_weinberger_check(omega, wo);
  d.results.push_back({{"shape", a.shape},
                       {"measure", rep.measure},
                       {"R", rep.R},
                       {"mu1_domain", rep.mu1_domain},
                       {"bound", rep.bound},
                       {"mu1_ball", rep.mu1_ball},
                       {"N_domain", rep.N_domain},
                       {"N_ball", rep.N_ball},
                       {"D_domain", rep.D_domain},
                       {"D_ball", rep.D_ball},
                       {"P1", rep.moments[0]},
                       {"P2", rep.moments[1]},
                       {"equality", rep.equality}});
  for (const auto& l : rep.links) d.link(l);
}

void cmd_counterexample(Doc& d, const Args& a, const RunConfig& c) {
  const double side = square_hi() - square_lo();
  std::vector<double> hs;
  for (int n : a.cells) {
    if (n < 2) throw UsageError("--cells entries must be at least 2");
    hs.push_back(side / n);
  }
  std::vector<double> deltas = a.deltas;
  std::sort(deltas.rbegin(), deltas.rend());
  std::sort(hs.rbegin(), hs.rend());
  const auto rep = counterexample_run(deltas, hs, c.tol, c.parallelism);
  d.results.push_back({{"kind", "square"}, {"delta", 0.0}, {"h", 0.0}, {"mu1", rep.square_mu1}});
  d.results.push_back({{"kind", "half-space"}, {"delta", 0.0}, {"h", 0.0}, {"mu1", rep.half_space_mu1}});
  d.check(check_close("mu1(T) = 5", rep.square_mu1, 5.0, 1e-8));
  d.check(check_close("mu1 of the half-space of the same measure = 1", rep.half_space_mu1, 1.0, 1e-8));
  for (const auto& row : rep.rows) {
    for (std::size_t l = 0; l < row.h.size(); ++l) {
      d.results.push_back({{"kind", "grid"}, {"delta", row.delta}, {"h", row.h[l]}, {"mu1", row.mu1[l]}});
      d.check(check_below("delta " + std::to_string(row.delta) + " h " + std::to_string(row.h[l]) + ": mu1 > 1", 1.0,
                          row.mu1[l]));
    }
    d.results.push_back({{"kind", "extrapolated"}, {"delta", row.delta}, {"h", 0.0}, {"mu1", num(row.extrapolated)}});
  }
}

void cmd_shape(Doc& d, const Args& a, const RunConfig& c) {
  if (a.radial) {
    const double R = parse_real(a.R, "--R");
    const auto s = shape_derivative_radial(a.N, R, a.k_index, c.tol, solver_options(c));
    const double rel = std::abs(s.formula - s.fd) / std::abs(s.fd);
    d.results.push_back({{"N", a.N}, {"R", R}, {"k_index", a.k_index}, {"eigenvalue", s.value},
                         {"formula", s.formula}, {"fd", s.fd}, {"relative_error", rel}});
    d.check(check_at_most("relative error <= 1e-4", rel, 1e-4));
    d.check(check_below("derivative < 0", s.formula, 0.0));
    return;
  }
  const Interval1D iv(parse_real(a.a, "--a"), parse_real(a.b, "--b"));
  const auto s = shape_derivative_1d(iv, c.tol, solver_options(c));
  const double rel = std::abs(s.formula - s.fd) / std::abs(s.fd);
  d.results.push_back({{"a", num(iv.a)}, {"b", num(iv.b)}, {"formula", s.formula}, {"fd", s.fd},
                       {"printed", s.printed}, {"relative_error", rel}});
  d.check(check_at_most("relative error <= 1e-4", rel, 1e-4));
}

void cmd_verify(Doc& d, const Args& a, const RunConfig& c) {
  if (a.criterion < 0 || a.criterion > kCriteria) throw UsageError("--criterion must lie in 0.." + std::to_string(kCriteria));
  for (int id = 1; id <= kCriteria; ++id) {
    if (a.criterion && a.criterion != id) continue;
    const std::string tag = "[" + std::to_string(id) + "] ";
    try {
      const auto r = run_criterion(id, verify_config(c));
      d.results.push_back({{"id", id}, {"title", r.title}, {"pass", r.pass()}, {"checks", r.checks.size()}});
      for (auto ch : r.checks) {
        ch.name = tag + ch.name;
        d.check(ch);
      }
    } catch (const std::exception& e) {
      d.results.push_back({{"id", id}, {"title", criterion_title(id)}, {"pass", false}, {"checks", 0}});
      d.check({tag + "exception: " + e.what(), false, 0.0, 0.0, 0.0});
    }
  }
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

void RunConfig::validate() const {
  if (!(tol > 1e-14 && tol < 1e-2)) throw std::invalid_argument("tol must lie in (1e-14, 1e-2)");
  if (!(trunc_weight > 0.0 && trunc_weight < 1.0)) throw std::invalid_argument("trunc_weight must lie in (0, 1)");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
  if (samples < 16 || mask_cells < 4 || slide_points < 4) throw std::invalid_argument("grid sizes too small");
}

json to_json(const RunConfig& c) {
  return {{"tol", c.tol},
          {"trunc_weight", c.trunc_weight},
          {"samples", c.samples},
          {"mask_cells", c.mask_cells},
          {"slide_points", c.slide_points},
          {"format", c.format == Format::json ? "json" : "csv"},
          {"out", c.out},
          {"parallelism", c.parallelism},
          {"seed", c.seed}};
}

RunConfig from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "tol") {
        c.tol = v.get<double>();
      } else if (key == "trunc_weight") {
        c.trunc_weight = v.get<double>();
      } else if (key == "samples") {
        c.samples = v.get<int>();
      } else if (key == "mask_cells") {
        c.mask_cells = v.get<int>();
      } else if (key == "slide_points") {
        c.slide_points = v.get<int>();
      } else if (key == "format") {
        const auto f = v.get<std::string>();
        if (f != "json" && f != "csv") throw std::invalid_argument("format must be json or csv");
        c.format = f == "csv" ? Format::csv : Format::json;
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "parallelism") {
        const auto p = v.get<long long>();
        if (p < 1) throw std::invalid_argument("parallelism must be at least 1");
        c.parallelism = unsigned(p);
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else {
        throw std::invalid_argument("unknown config key: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

std::string default_config_path() {
  if (const char* p = std::getenv("GAUSSEIG_CONFIG"); p && *p) return p;
  return "gausseig.json";
}

std::vector<std::string> schema_errors(const json& doc) {
  std::vector<std::string> errs;
  if (!doc.is_object()) return {"document is not an object"};
  for (const char* key : {"command", "config", "results", "checks"}) {
    if (!doc.contains(key)) errs.push_back(std::string("missing key: ") + key);
  }
  if (!errs.empty()) return errs;
  if (doc.size() != 4) errs.push_back("unexpected top-level keys");
  if (!doc["command"].is_string() || !kCommands.count(doc["command"].get<std::string>())) {
    errs.push_back("command is not a known subcommand");
  }
  try {
    from_json(doc["config"]).validate();
    if (doc["config"].size() != to_json(RunConfig{}).size()) errs.push_back("config is incomplete");
  } catch (const std::exception& e) {
    errs.push_back(std::string("config: ") + e.what());
  }
  if (!doc["results"].is_array()) {
    errs.push_back("results is not an array");
  } else {
    for (const auto& r : doc["results"]) {
      if (!r.is_object()) {
        errs.push_back("result is not an object");
        continue;
      }
      for (const auto& [k, v] : r.items()) {
        if (v.is_structured()) errs.push_back("result field " + k + " is not a scalar");
      }
    }
  }
  if (!doc["checks"].is_array()) {
    errs.push_back("checks is not an array");
  } else {
    for (const auto& c : doc["checks"]) {
      if (!c.is_object() || c.size() != 5 || !c.contains("name") || !c["name"].is_string() || !c.contains("pass") ||
          !c["pass"].is_boolean()) {
        errs.push_back("malformed check");
        continue;
      }
      for (const char* key : {"lhs", "rhs", "slack"}) {
        if (!c.contains(key) || !numeric_or_nonfinite(c[key])) {
          errs.push_back("check " + c["name"].get<std::string>() + ": " + key + " is not numeric");
        }
      }
    }
  }
  return errs;
}

std::string to_csv(const json& doc) {
  std::vector<std::string> header;
  for (const auto& r : doc["results"]) {
    for (const auto& [k, v] : r.items()) {
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    }
  }
  std::ostringstream s;
  for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << csv_field(header[i]);
  s << "\r\n";
  for (const auto& r : doc["results"]) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      s << (i ? "," : "") << (r.contains(header[i]) ? csv_field(r[header[i]]) : "");
    }
    s << "\r\n";
  }
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neumann and Dirichlet eigenvalues of the Ornstein-Uhlenbeck operator", "gausseig"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  double tol = 0, trunc_weight = 0;
  int samples = 0, mask_cells = 0, slide_points = 0;
  std::string format, out_path;
  long long parallelism = 0;
  std::uint64_t seed = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON config file (default $GAUSSEIG_CONFIG or ./gausseig.json)");
  auto* o_tol = app.add_option("--tol", tol, "solver tolerance");
  auto* o_tw = app.add_option("--trunc-weight", trunc_weight, "half-lines end where exp(-x^2/2) drops below this");
  auto* o_samples = app.add_option("--samples", samples, "eigenfunction samples per solve");
  auto* o_mask = app.add_option("--mask-cells", mask_cells, "mask resolution for polar domains");
  auto* o_slide = app.add_option("--slide-points", slide_points, "slide steps between the two half-lines");
  auto* o_format = app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* o_out = app.add_option("--out", out_path, "write the document here instead of stdout");
  auto* o_par = app.add_option("-j,--parallelism", parallelism, "worker threads for sweeps");
  auto* o_seed = app.add_option("--seed", seed, "seed for randomized test domains");

  Args a;
  const auto bc_values = CLI::IsMember({"neumann", "dirichlet"});
  using Runner = void (*)(Doc&, const Args&, const RunConfig&);
  std::vector<std::pair<CLI::App*, Runner>> subs;

  auto* eig = app.add_subcommand("eig1d", "eigenvalues on an interval (a, b); either end may be inf");
  eig->add_option("--a", a.a, "left end");
  eig->add_option("--b", a.b, "right end");
  eig->add_option("--bc", a.bc)->check(bc_values);
  eig->add_option("--count", a.count)->check(CLI::Range(1, 200));
  subs.push_back({eig, cmd_eig1d});

  auto* slide = app.add_subcommand("slide", "mu_1 along intervals of fixed Gaussian measure");
  slide->add_option("--L", a.L, "Gaussian measure of the intervals");
  subs.push_back({slide, cmd_slide});

  auto* radial = app.add_subcommand("radial", "eigenvalues of one angular branch on the ball B_R");
  radial->add_option("--N", a.N)->check(CLI::Range(2, 64));
  radial->add_option("--k", a.k)->check(CLI::Range(0, 64));
  radial->add_option("--R", a.R, "radius, may be inf");
  radial->add_option("--bc", a.bc)->check(bc_values);
  radial->add_option("--count", a.count)->check(CLI::Range(1, 200));
  subs.push_back({radial, cmd_radial});

  auto* ball = app.add_subcommand("ball", "first nontrivial Neumann eigenvalue of B_R");
  ball->add_option("--N", a.N)->check(CLI::Range(2, 64));
  ball->add_option("--R", a.R);
  subs.push_back({ball, cmd_ball});

  auto* bounds = app.add_subcommand("bounds", "the upper bounds k(R), h(R) and the crossover Rbar");
  bounds->add_option("--N", a.N)->check(CLI::Range(2, 64));
  bounds->add_option("--R", a.R);
  subs.push_back({bounds, cmd_bounds});

  auto* lemma = app.add_subcommand("lemma", "every inequality of the nu_1 < tau_1 argument at (N, R)");
  lemma->add_option("--N", a.N)->check(CLI::Range(2, 64));
  lemma->add_option("--R", a.R);
  subs.push_back({lemma, cmd_lemma});

  auto* rc = app.add_subcommand("rearrange-check", "rearrangement inequalities on seeded random samples");
  subs.push_back({rc, cmd_rearrange});

  auto* wb = app.add_subcommand("weinberger", "mu_1(Omega) <= bound <= mu_1(B) for a symmetric planar domain");
  wb->add_option("--shape", a.shape)->check(CLI::IsMember({"disk", "square", "star", "annulus"}));
  wb->add_option("--measure", a.measure);
  wb->add_option("--amp", a.amp, "star: rho = c (1 + amp cos(lobes t))");
  wb->add_option("--lobes", a.lobes);
  wb->add_option("--inner", a.inner, "annulus inner radius");
  subs.push_back({wb, cmd_weinberger});

  auto* ce = app.add_subcommand("counterexample", "mu_1 of rounded squares against the half-space");
  ce->add_option("--deltas", a.deltas, "rounding radii")->delimiter(',');
  ce->add_option("--cells", a.cells, "grid cells across the square side, one level each")->delimiter(',');
  subs.push_back({ce, cmd_counterexample});

  auto* sd = app.add_subcommand("shape-deriv", "shape derivative against a central difference");
  sd->add_option("--a", a.a);
  sd->add_option("--b", a.b);
  auto* o_N = sd->add_option("--N", a.N, "switch to the ball B_R in R^N")->check(CLI::Range(2, 64));
  sd->add_option("--R", a.R);
  sd->add_option("--k-index", a.k_index)->check(CLI::Range(1, 50));
  subs.push_back({sd, cmd_shape});

  auto* va = app.add_subcommand("verify-all", "the acceptance suite; exit 0 iff every check passes");
  va->add_option("--criterion", a.criterion, "run only this criterion");
  subs.push_back({va, cmd_verify});

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  a.radial = o_N->count() > 0;

  RunConfig cfg;
  Doc doc;
  try {
    const std::string path = o_config->count() ? config_path : default_config_path();
    const bool explicit_path = o_config->count() || std::getenv("GAUSSEIG_CONFIG");
    if (std::filesystem::exists(path)) {
      std::ifstream in(path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError("config " + path + ": " + e.what());
      }
      cfg = from_json(j);
    } else if (explicit_path) {
      throw UsageError("config file not found: " + path);
    }
    if (o_tol->count()) cfg.tol = tol;
    if (o_tw->count()) cfg.trunc_weight = trunc_weight;
    if (o_samples->count()) cfg.samples = samples;
    if (o_mask->count()) cfg.mask_cells = mask_cells;
    if (o_slide->count()) cfg.slide_points = slide_points;
    if (o_format->count()) cfg.format = format == "csv" ? Format::csv : Format::json;
    if (o_out->count()) cfg.out = out_path;
    if (o_par->count()) {
      if (parallelism < 1) throw UsageError("parallelism must be at least 1");
      cfg.parallelism = unsigned(parallelism);
    }
    if (o_seed->count()) cfg.seed = seed;
    cfg.validate();

    for (const auto& [sub, runner] : subs) {
      if (sub->parsed()) {
        doc.command = sub->get_name();
        runner(doc, a, cfg);
      }
    }
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    if (!e.diagnostics().empty()) err << e.diagnostics() << '\n';
    return kExitSolver;
  } catch (const std::logic_error& e) {
    // UsageError, invalid config, DomainError and PreconditionError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }

  json j = {{"command", doc.command}, {"config", to_json(cfg)}, {"results", doc.results}, {"checks", doc.checks}};
  const std::string text = cfg.format == Format::csv ? to_csv(j) : j.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!(f << text)) {
      err << "error: cannot write " << cfg.out << '\n';
      return kExitUsage;
    }
  }
  return doc.all_pass() ? kExitOk : kExitFailed;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace gausseig::cli
