#pragma once

#include <stdexcept>
#include <string>

namespace lfc {

enum class ErrorKind {
  Other,
  DivisionByZero,
  ParentMismatch,
  DegreeError,
  NormConditionViolated,
  TraceConditionViolated,
  NotAGenerator,
  ZeroArgument,
  NotEisenstein,
  PrecisionTooSmall,
  PrecisionExhausted,
  IndistinguishableFromZero,
  HenselFails,
  NotGalois,
  NormSolveFailed,
  DiagonalityViolated,
  NotInL,
  OracleTooLarge,
  InvalidInput,
};

const char *error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string &what) {
  throw Error(kind, std::string(error_kind_name(kind)) + ": " + what);
}

// Exit codes used by the command line front end.
int exit_code_for(ErrorKind kind) noexcept;

} // namespace lfc
