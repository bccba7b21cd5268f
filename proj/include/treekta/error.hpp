#pragma once

#include <stdexcept>
#include <string>

namespace treekta {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (bad size, bad option value).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data is unusable: I/O failure, parse failure, shape mismatch.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization hit a non-positive pivot.
class NotPositiveDefinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace treekta
