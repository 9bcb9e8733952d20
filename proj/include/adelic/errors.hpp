#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands live over different base fields.
struct FieldMismatch : Error {
  using Error::Error;
};

// The provable precision window of a series became empty, or a coefficient
// outside a certified window was requested. Never silently truncate.
struct WindowCollapse : Error {
  using Error::Error;
};

struct NotAUnit : Error {
  using Error::Error;
};

struct ZeroOrUnknown : Error {
  using Error::Error;
};

struct ZeroDenominator : Error {
  using Error::Error;
};

struct UnsupportedFlag : Error {
  using Error::Error;
};

struct UnsupportedConfiguration : Error {
  using Error::Error;
};

struct NonMonomial : Error {
  using Error::Error;
};

struct LatticeMismatch : Error {
  using Error::Error;
};

struct SubgroupMismatch : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace adelic
