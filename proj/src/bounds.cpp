#include "gausseig/bounds.hpp"

#include <cmath>
#include <numbers>

#include "gausseig/errors.hpp"
#include "gausseig/measure.hpp"
#include "gausseig/radial.hpp"

namespace gausseig {
namespace {

const double kQuarterWave = std::numbers::pi / std::sqrt(8.0);

}  // namespace

double k_bound(int N, double R) {
  if (N < 2) throw DomainError("k_bound: N must be at least 2");
  if (!(R > 0.0)) throw DomainError("k_bound: R must be positive");
  return N * gaussian_moment(N - 1, R) / gaussian_moment(N + 1, R);
}

double h_bound(int N, double R) {
  if (N < 2) throw DomainError("h_bound: N must be at least 2");
  const double d = R - std::sqrt(N - 1.0);
  if (!(d > 0.0)) throw DomainError("h_bound: R must exceed sqrt(N-1)");
  return std::numbers::pi * std::numbers::pi / (4.0 * d * d);
}

double rbar() {
  // f(1) = 2 - e^{1/2} > 0 > f(2) = 5 - e^2
  auto f = [](double t) { return t * t + 1.0 - std::exp(0.5 * t * t); };
  double lo = 1.0, hi = 2.0;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::J1: return "J1";
    case Regime::J2: return "J2";
    case Regime::J3: return "J3";
  }
  return "?";
}

Regime regime_of(int N, double R) {
  if (N < 2) throw DomainError("regime_of: N must be at least 2");
  if (!(R > 0.0)) throw DomainError("regime_of: R must be positive");
  const double s = std::sqrt(N - 1.0);
  if (R <= s) return Regime::J1;
  if (R <= s + kQuarterWave) return Regime::J2;
  return Regime::J3;
}

ChainLink make_link(std::string name, double lhs, double rhs, bool strict) {
  ChainLink l{std::move(name), lhs, rhs, strict, rhs - lhs, false};
  l.pass = strict ? l.slack > kStrictSlack : l.slack >= -kStrictSlack;
  return l;
}

RadialHandles solver_handles(double tol) {
  return {[tol](int N, double R) { return nu1(N, R, tol); }, [tol](int N, double R) { return tau1(N, R, tol); },
          [tol](int N, double R) { return g1_node(N, R, tol); }};
}

BoundsReport lemma_chain(int N, double R, const RadialHandles& radial) {
  BoundsReport rep;
  rep.N = N;
  rep.R = R;
  rep.regime = regime_of(N, R);
  rep.k_val = k_bound(N, R);
  const double s1 = std::sqrt(N - 1.0);
  if (R > s1) rep.h_val = h_bound(N, R);
  rep.nu1 = radial.nu1(N, R);
  rep.tau1 = radial.tau1(N, R);
  auto& L = rep.links;
  auto add = [&](std::string name, double lhs, double rhs, bool strict) {
    L.push_back(make_link(std::move(name), lhs, rhs, strict));
  };

  add("nu1(R) <= k(R)", rep.nu1, rep.k_val, false);
  if (N >= 3 && rep.regime != Regime::J3) {
    add("k(sqrt(N-1)) <= (2N+1)/(N-1)", k_bound(N, s1), (2.0 * N + 1) / (N - 1), false);
  }

  switch (rep.regime) {
    case Regime::J1:
      rep.branch = "R <= sqrt(N-1): Wronskian argument on (0, r0)";
      break;
    case Regime::J2: {
      rep.r0 = radial.g1_node(N, R);
      if (*rep.r0 <= s1) {
        rep.branch = "r0 <= sqrt(N-1): Wronskian argument on (0, r0)";
        break;
      }
      const double h = *rep.h_val;
      if (N == 2) {
        const double Rb = rbar();
        if (R < Rb) {
          rep.branch = "N = 2, 1 < R < Rbar";
          add("k(R) < k(1)", rep.k_val, k_bound(2, 1.0), true);
          add("k(1) < h(Rbar)", k_bound(2, 1.0), h_bound(2, Rb), true);
          add("h(Rbar) < h(R)", h_bound(2, Rb), h, true);
        } else {
          rep.branch = "N = 2, Rbar <= R <= 1 + pi/sqrt8";
          const double kb = k_bound(2, Rb);
          add("k(R) <= k(Rbar)", rep.k_val, kb, false);
          add("k(Rbar) <= h(1 + pi/sqrt8)", kb, h_bound(2, 1.0 + kQuarterWave), false);
          add("h(1 + pi/sqrt8) <= h(R)", h_bound(2, 1.0 + kQuarterWave), h, false);
        }
      } else {
        const double s2 = std::sqrt(N + 2.0);
        if (R < s2) {
          rep.branch = "N >= 3, sqrt(N-1) < R < sqrt(N+2)";
          const double c = (2.0 * N + 1) / (N - 1);
          add("k(R) < k(sqrt(N-1))", rep.k_val, k_bound(N, s1), true);
          add("(2N+1)/(N-1) < h(sqrt(N+2))", c, h_bound(N, s2), true);
          add("h(sqrt(N+2)) < h(R)", h_bound(N, s2), h, true);
        } else {
          rep.branch = "N >= 3, sqrt(N+2) <= R <= sqrt(N-1) + pi/sqrt8";
          add("k(R) <= k(sqrt(N+2))", rep.k_val, k_bound(N, s2), false);
          add("k(sqrt(N+2)) < 2", k_bound(N, s2), 2.0, true);
          add("2 <= h(R)", 2.0, h, false);
        }
      }
      add("h(R) < tau1(R)", h, rep.tau1, true);
      break;
    }
    case Regime::J3: {
      rep.branch = "R > sqrt(N-1) + pi/sqrt8: comparison with tau1(inf) = 2";
      const double s2 = std::sqrt(N + 2.0);
      add("k(R) < k(sqrt(N+2))", rep.k_val, k_bound(N, s2), true);
      add("k(sqrt(N+2)) < 2", k_bound(N, s2), 2.0, true);
      add("2 < tau1(R)", 2.0, rep.tau1, true);
      break;
    }
  }
  add("nu1(R) < tau1(R)", rep.nu1, rep.tau1, true);

  rep.chain_ok = true;
  for (const auto& l : L) rep.chain_ok = rep.chain_ok && l.pass;
  return rep;
}

}  // namespace gausseig
