#ifndef STOCKLOAN_ERROR_HPP
#define STOCKLOAN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stockloan {

/// Invalid contract, market or grid parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// r > eta with zero dividend: the exit boundary diverges as tau -> 0+.
class UnboundedBoundaryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Argument outside the domain on which a function is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Spot below the accrued debt: the margin call has already fired.
class MarginCalledStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Base for numerical failures raised by the solvers.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IterationFailure : public SolverError {
 public:
  IterationFailure(const std::string& what, double last_iterate, double residual)
      : SolverError(what), last_iterate_(last_iterate), residual_(residual) {}

  double last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  double last_iterate_;
  double residual_;
};

class SingularDerivativeError : public SolverError {
 public:
  SingularDerivativeError(const std::string& what, double at)
      : SolverError(what), at_(at) {}

  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// Failure of one step of the boundary march, annotated with where it happened.
class BoundaryStepError : public SolverError {
 public:
  BoundaryStepError(const std::string& what, std::size_t step, double tau)
      : SolverError(what), step_(step), tau_(tau) {}

  std::size_t step() const noexcept { return step_; }
  double tau() const noexcept { return tau_; }

 private:
  std::size_t step_;
  double tau_;
};

class BracketNotFoundError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace stockloan

#endif  // STOCKLOAN_ERROR_HPP
