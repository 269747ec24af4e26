#pragma once

#include <stdexcept>
#include <string>

namespace decaycert {

enum class ErrorKind {
  NonHermitian,
  NotPositiveDefinite,
  NotAccretive,
  DimensionMismatch,
  UnsupportedScale,
  NonPositiveDelta,
  InvalidIntercept,
  InvalidArgument,
  EigensolverFailure,
  EnvelopeViolation,
  FileNotFound,
  ParseError,
};

/// Stable snake_case name, used in JSON failure objects.
const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace decaycert
