#pragma once

#include <stdexcept>
#include <string>

namespace oddfield {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition or configuration value was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// No retarded root (or no solution on the retarded branch) was found.
class NoRootError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The observation point sits on or too near the light cone of the source,
/// where 1/(R.v) blows up.
class DegenerateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Quadrature, derivative estimation or extrapolation failed to converge.
class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace oddfield
