#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gausseig/bounds.hpp"
#include "gausseig/errors.hpp"
#include "gausseig/interval.hpp"

using namespace gausseig;

namespace {
const double kPi = std::numbers::pi;

bool has_link(const BoundsReport& r, const std::string& name) {
  return std::any_of(r.links.begin(), r.links.end(), [&](const ChainLink& l) { return l.name == name; });
}
}  // namespace

TEST_CASE("k_bound values") {
  const double closed = (2 - 2 * std::exp(-0.5)) / (2 - 3 * std::exp(-0.5));
  CHECK(std::abs(k_bound(2, 1.0) - closed) < 1e-12);
  CHECK(std::abs(k_bound(2, 1.0) - 4.36199386709226908) < 1e-12);
  CHECK(std::abs(k_bound(2, kInf) - 1.0) < 1e-12);
  CHECK(std::abs(k_bound(5, kInf) - 1.0) < 1e-12);
  // N = 2 closed form (2 - 2e^{-R^2/2}) / (2 - (R^2+2) e^{-R^2/2})
  for (double R : {0.3, 1.7, 3.0, 6.0}) {
    const double e = std::exp(-0.5 * R * R);
    CHECK(std::abs(k_bound(2, R) - (2 - 2 * e) / (2 - (R * R + 2) * e)) < 1e-9 * k_bound(2, R));
  }
  // at Rbar the N = 2 closed form collapses to exactly 2
  CHECK(std::abs(k_bound(2, rbar()) - 2.0) < 1e-12);
}

TEST_CASE("h_bound values") {
  CHECK(std::abs(h_bound(2, 1 + kPi / std::sqrt(8.0)) - 2.0) < 1e-14);
  CHECK(std::abs(h_bound(3, std::sqrt(5.0)) - 3.65300249533761950) < 1e-13);
  CHECK(std::abs(h_bound(2, rbar()) - 7.20492622251891) < 1e-10);
  CHECK_THROWS_AS(h_bound(2, 1.0), DomainError);
  CHECK_THROWS_AS(h_bound(3, 1.0), DomainError);
}

TEST_CASE("rbar") {
  const double r = rbar();
  CHECK(std::abs(r * r + 1 - std::exp(0.5 * r * r)) < 1e-12);
  CHECK(std::abs(r - 1.58520106524451319) < 1e-12);
  CHECK(1 + 1 - std::exp(0.5) > 0);
  CHECK(4 + 1 - std::exp(2.0) < 0);
}

TEST_CASE("monotonicity of the bound functions") {
  for (int N : {2, 3, 5, 8}) {
    double pk = kInf, ph = kInf;
    const double s = std::sqrt(N - 1.0);
    for (int i = 1; i <= 100; ++i) {
      const double R = 0.05 * i;
      const double k = k_bound(N, R);
      CHECK(k < pk);
      pk = k;
      const double Rh = s + 0.03 * i;
      const double h = h_bound(N, Rh);
      CHECK(h < ph);
      ph = h;
    }
  }
}

TEST_CASE("constant inequalities across dimensions") {
  double prev_c = kInf, prev_h = 0.0;
  for (int N = 2; N <= 12; ++N) {
    CHECK(k_bound(N, std::sqrt(N + 2.0)) <= 2.0);
    const double c = (2.0 * N + 1) / (N - 1);
    const double h = h_bound(N, std::sqrt(N + 2.0));
    if (N >= 3) {
      CHECK(k_bound(N, std::sqrt(N - 1.0)) <= c);
      CHECK(c < h);
      CHECK(c < prev_c);
      CHECK(h > prev_h);
      prev_c = c;
      prev_h = h;
    } else {
      CHECK_FALSE(c < h);  // the comparison fails in the plane
    }
  }
}

TEST_CASE("regime dispatch") {
  CHECK(regime_of(2, 0.5) == Regime::J1);
  CHECK(regime_of(2, 1.0) == Regime::J1);
  CHECK(regime_of(2, 1.5) == Regime::J2);
  CHECK(regime_of(2, 2.2) == Regime::J3);
  CHECK(regime_of(5, 3.0) == Regime::J2);  // sqrt4 + pi/sqrt8 = 3.11
  CHECK(regime_of(5, 3.2) == Regime::J3);
}

TEST_CASE("lemma chain examples") {
  const auto radial = solver_handles(1e-10);
  const auto a = lemma_chain(2, 0.5, radial);
  CHECK(a.regime == Regime::J1);
  CHECK_FALSE(a.h_val.has_value());
  CHECK(a.chain_ok);
  CHECK(has_link(a, "nu1(R) < tau1(R)"));

  const auto b = lemma_chain(3, std::sqrt(2.0), radial);
  CHECK(has_link(b, "k(sqrt(N-1)) <= (2N+1)/(N-1)"));
  for (const auto& l : b.links) {
    if (l.name == "k(sqrt(N-1)) <= (2N+1)/(N-1)") {
      CHECK(l.rhs == doctest::Approx(3.5));
      CHECK(l.pass);
    }
  }
  CHECK(b.chain_ok);

  const auto c = lemma_chain(5, 3.0, radial);
  CHECK(c.regime == Regime::J2);
  CHECK(c.chain_ok);
  CHECK(c.nu1 < c.k_val);
  CHECK(c.k_val < 2.0);
  CHECK(2.0 < c.tau1);

  const auto d = lemma_chain(5, 4.0, radial);
  CHECK(d.regime == Regime::J3);
  CHECK(has_link(d, "2 < tau1(R)"));
  CHECK(d.chain_ok);
}

TEST_CASE("lemma chain holds across all three regimes") {
  const auto radial = solver_handles(1e-10);
  for (int N : {2, 3, 5}) {
    const double s = std::sqrt(N - 1.0), e = s + kPi / std::sqrt(8.0);
    std::vector<double> radii;
    for (int i = 1; i <= 7; ++i) radii.push_back(s * i / 7.0);
    for (int i = 1; i <= 7; ++i) radii.push_back(s + (e - s) * i / 7.0);
    for (int i = 1; i <= 6; ++i) radii.push_back(e + 0.8 * i);
    for (double R : radii) {
      const auto rep = lemma_chain(N, R, radial);
      CHECK_MESSAGE(rep.chain_ok, "N=" << N << " R=" << R << " branch=" << rep.branch);
      for (const auto& l : rep.links) CHECK_MESSAGE(l.pass, l.name << " slack " << l.slack << " at R=" << R);
    }
  }
}

TEST_CASE("failing links are reported") {
  RadialHandles fake{[](int, double) { return 3.0; }, [](int, double) { return 2.0; },
                     [](int, double) { return 0.1; }};
  const auto rep = lemma_chain(2, 0.5, fake);
  CHECK_FALSE(rep.chain_ok);
  const auto l = make_link("x", 1.0, 1.0 + 5e-11, true);
  CHECK_FALSE(l.pass);
  CHECK(make_link("x", 1.0, 1.0 - 5e-11, false).pass);
}
