#pragma once

#include <stdexcept>
#include <string>

namespace lgtd {

/// Error categories raised by the library. The CLI maps any of these to
/// exit code 2 (data error); usage problems never reach this type.
enum class ErrorKind {
  EmptySeries,
  NonFiniteValue,
  InvalidParams,
  EmptyFocus,
  DegenerateWindow,
  EmptyErrors,
  WindowTooLarge,
  DegreeTooHigh,
  LengthMismatch,
  EmptyInput,
  SeriesTooShort,
  ParseError,
  NonMonotoneIndex,
  MissingColumn,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lgtd
