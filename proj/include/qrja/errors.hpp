#pragma once

#include <stdexcept>
#include <string>

namespace qrja {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix length does not match the instance it is used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (bad id, non-positive weight, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Exponent outside the range a routine supports (p <= 1 for IRLS, p >= 1 for
/// the Max-Cut reduction, p < 1 for any solver).
class UnsupportedExponent : public Error {
 public:
  using Error::Error;
};

/// Exhaustive routines refuse inputs past their size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class UnknownMethod : public Error {
 public:
  using Error::Error;
};

}  // namespace qrja
