#pragma once

#include <stdexcept>
#include <string>

namespace subflow {

/// Argument outside the mathematical domain of an operation (e.g. nonpositive
/// density, Bernoulli value below the enthalpy floor).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested state lies on the supersonic branch of Bernoulli's law.
class SupersonicBranchError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input data that violates an admissibility condition (wall gap, endpoint
/// signs of the Bernoulli datum, inflow profile bounds, ...).
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative linear solver failed to reach its tolerance.
class LinearSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonlinear iteration that a caller required to converge did not.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subflow
