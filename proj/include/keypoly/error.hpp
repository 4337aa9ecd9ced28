#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace keypoly {

enum class ErrorKind {
  UndefinedDifference,
  UndefinedProduct,
  Overflow,
  NoEventualMinimizer,
  DivisionByZero,
  FieldMismatch,
  NotInvertible,
  InsufficientPrecision,
  DegreeBound,
  InvalidChain,
  InvalidScenario,
  HorizonExhausted,
  CertificateFailed,
  VacuouslyTrue,
  PrecisionExhausted,
  Precondition,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries the module-level kind so the
/// CLI can report it by name and map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace keypoly
