#pragma once

#include <stdexcept>
#include <string>

namespace austere4 {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A primitive was evaluated outside its domain (sqrt of a negative, division
/// by zero, a stencil leaving the parameter box).
class DomainError : public Error {
 public:
  DomainError(std::string primitive, const std::string& detail)
      : Error("domain error in '" + primitive + "': " + detail),
        primitive_(std::move(primitive)) {}

  const std::string& primitive() const noexcept { return primitive_; }

 private:
  std::string primitive_;
};

/// The Jacobian of an immersion (or a frame matrix) lost rank.
class SingularImmersionError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel failed to converge. Indicates an internal fault.
class NumericalFault : public Error {
 public:
  using Error::Error;
};

/// The normal frame is not smooth across a finite-difference stencil.
class StencilTooCoarseError : public Error {
 public:
  using Error::Error;
};

}  // namespace austere4
