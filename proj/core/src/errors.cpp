#include "padicprob/errors.hpp"

namespace padicprob {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::Order: return "OrderError";
    case ErrorKind::InvalidTarget: return "InvalidTarget";
    case ErrorKind::ConditioningOnNull: return "ConditioningOnNull";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::DigitRange: return "DigitRange";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::OscillationMissing: return "OscillationMissing";
    case ErrorKind::NoRingStructure: return "NoRingStructure";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::RegionNotSignificant: return "RegionNotSignificant";
  }
  return "Error";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::HypothesisViolation: return 3;
    case ErrorKind::InsufficientData: return 4;
    case ErrorKind::Domain: return 5;
    case ErrorKind::PrecisionExhausted: return 6;
    case ErrorKind::Order: return 7;
    case ErrorKind::InvalidTarget: return 8;
    case ErrorKind::ConditioningOnNull: return 9;
    case ErrorKind::Range: return 10;
    case ErrorKind::DigitRange: return 11;
    case ErrorKind::AlphabetMismatch: return 12;
    case ErrorKind::OscillationMissing: return 13;
    case ErrorKind::NoRingStructure: return 14;
    case ErrorKind::NotInvertible: return 15;
    case ErrorKind::RegionNotSignificant: return 16;
    case ErrorKind::InvalidArgument: return 17;
  }
  return 1;
}

}  // namespace padicprob
