#pragma once

#include <stdexcept>
#include <string>

namespace rnpv {

// Base for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user input: out-of-range parameters, mismatched horizons, ...
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An internal cross-check failed (e.g. probability mass does not sum to 1).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// The request is well formed but not supported by the model.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace rnpv
