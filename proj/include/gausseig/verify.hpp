#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gausseig {

/// One audited comparison. slack = rhs - lhs; pass says whether the comparison held.
struct Check {
  std::string name;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

Check check_at_most(std::string name, double lhs, double rhs, double tol = 0.0);
/// lhs < rhs with slack above `margin`.
Check check_below(std::string name, double lhs, double rhs, double margin = 0.0);
/// |value - target| <= tol, reported as lhs = |value - target|, rhs = tol.
Check check_close(std::string name, double value, double target, double tol);

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool pass() const;
};

struct VerifyConfig {
  double tol = 1e-9;
  unsigned workers = 1;
  std::uint64_t seed = 20240601;
};

inline constexpr int kCriteria = 13;

const char* criterion_title(int id);

/// Runs acceptance criterion `id` in 1..kCriteria. Solver exceptions propagate.
CriterionResult run_criterion(int id, const VerifyConfig& cfg = {});

std::vector<CriterionResult> run_all(const VerifyConfig& cfg = {});

}  // namespace gausseig
