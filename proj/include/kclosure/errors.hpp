#pragma once

#include <stdexcept>
#include <string>

namespace kclosure {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: non-prime characteristic, p | m, field too small, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Division by zero and similar.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A value fails its defining equations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for this kind of value (e.g. y at an infinite place).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Computed data contradicts itself (non-integral solutions, count mismatch).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A size budget would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Output destination cannot be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kclosure
