#pragma once

#include <stdexcept>
#include <string>

namespace tiltkit {

/// Base of all library exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad file syntax, mismatched dimensions, unknown vertex.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation hit its configured bound (resolution length, path length,
/// iteration steps). The answer may exist beyond the bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not. Always a bug or a broken invariant.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tiltkit
