#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gausseig {

/// k(R) = N int_0^R e^{-s^2/2} s^{N-1} ds / int_0^R e^{-s^2/2} s^{N+1} ds; R may be +inf (k = 1).
double k_bound(int N, double R);

/// h(R) = pi^2 / (4 (R - sqrt(N-1))^2), defined for R > sqrt(N-1).
double h_bound(int N, double R);

/// Positive zero of t^2 + 1 - e^{t^2/2}.
double rbar();

enum class Regime { J1, J2, J3 };

const char* to_string(Regime r);

/// J1 = (0, sqrt(N-1)], J2 = (sqrt(N-1), sqrt(N-1) + pi/sqrt8], J3 beyond.
Regime regime_of(int N, double R);

/// One inequality lhs < rhs (strict) or lhs <= rhs. slack = rhs - lhs.
struct ChainLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool strict = true;
  double slack = 0.0;
  bool pass = false;
};

inline constexpr double kStrictSlack = 1e-10;

ChainLink make_link(std::string name, double lhs, double rhs, bool strict);

/// Radial eigenvalue providers; defaults call the radial solver.
struct RadialHandles {
  std::function<double(int, double)> nu1;
  std::function<double(int, double)> tau1;
  std::function<double(int, double)> g1_node;
};

RadialHandles solver_handles(double tol);

struct BoundsReport {
  int N = 2;
  double R = 1.0;
  double k_val = 0.0;
  std::optional<double> h_val;  // only for R > sqrt(N-1)
  Regime regime = Regime::J1;
  std::string branch;  // which argument of the proof was followed
  double nu1 = 0.0;
  double tau1 = 0.0;
  std::optional<double> r0;  // node of g_1, evaluated in J2
  std::vector<ChainLink> links;
  bool chain_ok = false;
};

/// Every link of the nu_1 < tau_1 argument that applies to (N, R).
BoundsReport lemma_chain(int N, double R, const RadialHandles& radial);

}  // namespace gausseig
