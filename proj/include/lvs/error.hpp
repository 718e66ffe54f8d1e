#pragma once

#include <stdexcept>
#include <string>

namespace lvs {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input data (bad file, NaN entry, size mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but carries nothing to work with (zero matrix,
/// empty sampling support).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The data violates a precondition of the operation, e.g. a sign-transform
/// window wider than the spectrum allows, or an ill-posed regularized solve.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A constructive routine gave up: polynomial degree cap, dilation size cap.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace lvs
