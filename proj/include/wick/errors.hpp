#pragma once

#include <stdexcept>
#include <string>

namespace wick {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A result (or a requested Hermite order) would exceed the truncation cap.
class OrderOverflow : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series that the caller asked to sum does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input; `path` is a JSON pointer to the offending element.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A zero-variance estimate disagrees with the exact value.
class HardMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace wick
