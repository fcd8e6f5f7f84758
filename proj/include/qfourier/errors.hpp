#pragma once

#include <stdexcept>
#include <string>

namespace qfourier {

/// Invalid parameters or configuration. The CLI maps this to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures that happen while computing (exit code 3 in the CLI).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The argument of a principal-branch complex power fell on the cut (-inf, 0].
class BranchCutError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A hypergeometric connection formula needs a limit form that is not implemented.
class DegenerateParameterError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// No Hilhorst member with the requested lambda exists for the given left end.
class UnachievableTargetError : public NumericError {
 public:
  UnachievableTargetError(const std::string& what, double infimum)
      : NumericError(what), infimum_(infimum) {}

  double infimum() const noexcept { return infimum_; }

 private:
  double infimum_;
};

}  // namespace qfourier
