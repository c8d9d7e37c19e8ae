#include "sftlab/error.hpp"

namespace sftlab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotTransitive: return "NotTransitive";
    case ErrorCode::EmptySubshift: return "EmptySubshift";
    case ErrorCode::RangeMismatch: return "RangeMismatch";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::SingularEnergy: return "SingularEnergy";
    case ErrorCode::NotInStableSet: return "NotInStableSet";
    case ErrorCode::NotInUnstableSet: return "NotInUnstableSet";
    case ErrorCode::ParabolicOrCentral: return "ParabolicOrCentral";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSubcommand: return "UnknownSubcommand";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sftlab
