#pragma once

#include <stdexcept>
#include <string>

namespace qcarpet {

// Base for every failure raised by the library. The CLI maps the concrete
// subclasses onto exit codes (validation 1, numeric 2, I/O 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// Panel doubling hit the panel cap before successive estimates agreed.
class QuadratureError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ParityError : public NumericError {
 public:
  using NumericError::NumericError;
};

class InsufficientSamplesError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Root bracketing failed (potential unbounded below, action not monotone).
class BracketError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Query point lies inside the turning-point buffer.
class TurningPointError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcarpet
