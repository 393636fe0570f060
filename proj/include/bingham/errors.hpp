#pragma once

#include <stdexcept>
#include <string>

namespace bingham {

/// Base class of every error thrown by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Poisson right-hand side is not orthogonal to the constant nullspace.
class IncompatibleRhs : public Error {
 public:
  using Error::Error;
};

/// The transported density left [rho1, rho2] beyond the allowed roundoff.
class MaxPrincipleViolation : public Error {
 public:
  using Error::Error;
};

/// Initial density outside the admissible bounds.
class InvalidInitialDensity : public Error {
 public:
  using Error::Error;
};

/// A linear solve failed to reach its tolerance where the caller cannot continue.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Diagnostic requested on a run whose parameters violate the hypotheses it relies on.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Parameter combination rejected at construction or parse time.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& message)
      : Error(location + ": " + message), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bingham
