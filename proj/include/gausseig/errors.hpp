#pragma once

#include <stdexcept>
#include <string>

namespace gausseig {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input violates a documented precondition (mean-zero, symmetry, matching measure, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical solver did not converge or could not bracket its target.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::string diagnostics = {})
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

/// Adaptive quadrature exhausted its subdivision budget; carries the partial estimate.
class QuadratureError : public SolverError {
 public:
  QuadratureError(const std::string& what, double partial, double error_estimate)
      : SolverError(what), partial_(partial), error_estimate_(error_estimate) {}

  double partial() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_;
  double error_estimate_;
};

}  // namespace gausseig
