#pragma once

#include <stdexcept>
#include <string>

namespace unidec {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands of incompatible shape (non-square, mixed Kraus dimensions, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input violates a documented precondition (Hermiticity, PSD, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A scalar parameter is outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The interpolation matrix E(mu) is too ill-conditioned to solve.
class SingularInterpolationError : public Error {
 public:
  using Error::Error;
};

// Sampling probabilities or other derived quantities are numerically broken.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace unidec
