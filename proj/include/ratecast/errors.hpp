#pragma once

/**
 * Error types thrown by the library.  Every failure derives from
 * ratecast::Error (itself a std::runtime_error), so callers can catch the
 * whole family with one handler while tests can pin down the exact kind.
 */

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratecast {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A denominator that must be nonzero is exactly zero.  Carries the 1-based
/// index of the offending observation or rate.
class ZeroDenominator : public Error {
 public:
  ZeroDenominator(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Series too short for the requested operation.
class LengthError : public Error {
 public:
  using Error::Error;
};

/// A window (length, endpoint) combination that does not fit the data.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// An index outside the valid 1-based range.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// A value outside the mathematical domain of the operation (non-finite
/// input, nonpositive base for a fractional power, exponent outside [0,1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by zero arising inside a computation (e.g. a window statistic
/// that makes the discount form's denominator vanish).
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Mismatched lengths/frequencies between companion inputs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Not enough observations to run any step of a walk-forward evaluation.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Imported baseline forecasts do not line up with the evaluated steps.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// A batch operation received no usable members.
class EmptyBatch : public Error {
 public:
  using Error::Error;
};

}  // namespace ratecast
