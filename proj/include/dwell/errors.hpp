#pragma once

#include <stdexcept>
#include <string>

namespace dwell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NoPositiveRoot : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class BasisTooSmall : public Error {
 public:
  using Error::Error;
};

/// Hermite-function recurrence asked to evaluate outside its stable range.
class OverflowGuard : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class NoTransitionsFound : public Error {
 public:
  using Error::Error;
};

}  // namespace dwell
