#pragma once

#include <stdexcept>
#include <string>

namespace tubalrpca {

/// Base of every error raised by the library. The CLI maps subclasses to
/// exit codes (usage 1, I/O 2, numeric 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration or a violated precondition on caller-supplied values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data the solver cannot accept, e.g. non-finite entries.
class InputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// SVD non-convergence, non-finite iterates, broken conjugate symmetry.
class NumericError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace tubalrpca
