#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fm {

// Input outside the admissible set of an operation (bad b, y = 0, degenerate jet, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The requested volume branch is not implemented (Holmes-Thompson).
class UnsupportedBranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The transversal field lies in the tangent plane of the jet.
class DegenerateTransversalError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A rational function was evaluated at a root of its denominator.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An iterative numerical method failed to converge.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}

  // Last estimates (quadrature) or residual norms (Newton), oldest first.
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

class NonConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StagnationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fm
