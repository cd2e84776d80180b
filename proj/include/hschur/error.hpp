#pragma once

#include <stdexcept>
#include <string>

namespace hschur {

enum class ErrorKind {
  UnsupportedOperation,
  InvalidRadius,
  FieldMismatch,
  DimensionMismatch,
  GridMismatch,
  OddDimension,
  WrongExperiment,
  OracleTooLarge,
  ConfigInvalid,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hschur
