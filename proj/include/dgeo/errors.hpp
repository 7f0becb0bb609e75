#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dgeo {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration input (manifold spec files, CLI options).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Expression syntax error; carries the byte offset and the expected-token set.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset, std::string expected)
      : Error(msg), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Point, stencil or curve image left the margin-shrunk chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Curve-specific failures (non-closed loop where closure is required, ...).
class CurveError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: degenerate metric, singular frame, non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace dgeo
