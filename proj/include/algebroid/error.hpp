#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace algebroid {

enum class ErrorKind {
  UnknownVariable,
  SyntaxError,
  DimensionMismatch,
  ShapeMismatch,
  AntisymmetryViolation,
  AlgebroidMismatch,
  NotClosed,
  JacobiViolation,
  NotABivector,
  BundleMismatch,
  NotInvertible,
  NotTangent,
  ToleranceNotMet,
  NotALoop,
  NotAFixedPoint,
  BadOrder,
  DegreeOverflow,
  ClosednessFailure,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can report it in machine-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The text without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace algebroid
