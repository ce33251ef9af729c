#pragma once

#include <stdexcept>
#include <string>

namespace covopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (catalogs, score tables, reports).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnknownMetricError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A ratio over covered measure was requested where the measure is zero.
class DegenerateCoverageError : public Error {
 public:
  using Error::Error;
};

// The request is well-formed but refused, e.g. exhaustive search over too many items.
class LimitExceededError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace covopt
