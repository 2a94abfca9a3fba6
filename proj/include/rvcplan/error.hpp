#pragma once

#include <stdexcept>
#include <string>

namespace rvcplan {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed requirement text or malformed document structure.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A label or identifier that does not resolve to a declared entity.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

/// Operands whose shapes (tenant count, variant count) disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace rvcplan
