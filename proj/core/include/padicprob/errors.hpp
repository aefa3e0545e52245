#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padicprob {

/// Failure categories raised by the library. Each maps to one CLI exit code.
enum class ErrorKind {
  Parse,
  InvalidArgument,
  HypothesisViolation,
  InsufficientData,
  Domain,
  PrecisionExhausted,
  Order,
  InvalidTarget,
  ConditioningOnNull,
  Range,
  DigitRange,
  AlphabetMismatch,
  OscillationMissing,
  NoRingStructure,
  NotInvertible,
  RegionNotSignificant,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit code for a failure kind (0 is reserved for success).
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace padicprob
