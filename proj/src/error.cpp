#include "lfc/error.hpp"

namespace lfc {

const char *error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::Other: return "Error";
  case ErrorKind::DivisionByZero: return "DivisionByZero";
  case ErrorKind::ParentMismatch: return "ParentMismatch";
  case ErrorKind::DegreeError: return "DegreeError";
  case ErrorKind::NormConditionViolated: return "NormConditionViolated";
  case ErrorKind::TraceConditionViolated: return "TraceConditionViolated";
  case ErrorKind::NotAGenerator: return "NotAGenerator";
  case ErrorKind::ZeroArgument: return "ZeroArgument";
  case ErrorKind::NotEisenstein: return "NotEisenstein";
  case ErrorKind::PrecisionTooSmall: return "PrecisionTooSmall";
  case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
  case ErrorKind::IndistinguishableFromZero: return "IndistinguishableFromZero";
  case ErrorKind::HenselFails: return "HenselFails";
  case ErrorKind::NotGalois: return "NotGalois";
  case ErrorKind::NormSolveFailed: return "NormSolveFailed";
  case ErrorKind::DiagonalityViolated: return "DiagonalityViolated";
  case ErrorKind::NotInL: return "NotInL";
  case ErrorKind::OracleTooLarge: return "OracleTooLarge";
  case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Error";
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::NotGalois: return 2;
  case ErrorKind::NotEisenstein: return 3;
  case ErrorKind::PrecisionTooSmall:
  case ErrorKind::PrecisionExhausted:
  case ErrorKind::IndistinguishableFromZero: return 4;
  case ErrorKind::OracleTooLarge: return 5;
  default: return 1;
  }
}

} // namespace lfc
