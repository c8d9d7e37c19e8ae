#pragma once

#include <stdexcept>
#include <string>

namespace sftlab {

enum class ErrorCode {
  InvalidArgument,
  NotTransitive,
  EmptySubshift,
  RangeMismatch,
  SupportViolation,
  NotStochastic,
  SingularEnergy,
  NotInStableSet,
  NotInUnstableSet,
  ParabolicOrCentral,
  ResolutionTooCoarse,
  ParseError,
  UnknownSubcommand,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sftlab
