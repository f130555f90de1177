#pragma once

#include <stdexcept>
#include <string>

namespace topcorr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text (rationals, JSON syntax).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally inconsistent input: wrong table sizes, dangling names, missing weights.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Objects that should be parallel or composable are not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class NotInvariant : public Error {
 public:
  using Error::Error;
};

class NotQuasiInvariant : public Error {
 public:
  using Error::Error;
};

class NotACoboundary : public Error {
 public:
  using Error::Error;
};

/// Input exceeds the exhaustive-check size limits.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace topcorr
