#pragma once

#include <stdexcept>
#include <string>

namespace escs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain where a formula or operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with a state family it does not handle.
class FamilyMismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A raw (unscaled) special-function value left the floating-point range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Fock truncation is too small for the requested accuracy.
class CutoffError : public Error {
 public:
  using Error::Error;
};

/// Path state norm drifted away from 1 along the evolution.
class NormDriftError : public Error {
 public:
  using Error::Error;
};

/// Phase requested of an (almost) vanishing overlap.
class OrthogonalityError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: failed eigensolver, non-imaginary connection, ...
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace escs
