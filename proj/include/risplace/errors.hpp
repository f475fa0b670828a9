#pragma once

#include <stdexcept>
#include <string>

namespace risplace {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the model is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller passed inconsistent arguments (length mismatch, empty range, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical method failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Leading polynomial coefficient is zero.
class DegenerateDegreeError : public Error {
 public:
  using Error::Error;
};

/// Aperture too small for the pattern to have a first null.
class NoNullError : public Error {
 public:
  using Error::Error;
};

/// Beam edge does not intersect the surface plane (grazing incidence).
class FootprintUnboundedError : public Error {
 public:
  using Error::Error;
};

/// No reflection unit centre falls inside the illuminated region.
class EmptyIlluminationError : public Error {
 public:
  using Error::Error;
};

}  // namespace risplace
