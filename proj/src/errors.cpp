#include "brandt/errors.hpp"

namespace brandt {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kOrderMismatch: return "OrderMismatch";
    case ErrorCode::kBadGenerator: return "BadGenerator";
    case ErrorCode::kNotAMember: return "NotAMember";
    case ErrorCode::kEmptyShareList: return "EmptyShareList";
    case ErrorCode::kEmptyPartials: return "EmptyPartials";
    case ErrorCode::kAlreadyCommitted: return "AlreadyCommitted";
    case ErrorCode::kNotCommitted: return "NotCommitted";
    case ErrorCode::kWitnessMismatch: return "WitnessMismatch";
    case ErrorCode::kPriceOutOfRange: return "PriceOutOfRange";
    case ErrorCode::kProofRejected: return "ProofRejected";
    case ErrorCode::kMalformedPayload: return "MalformedPayload";
    case ErrorCode::kInvalidBidVector: return "InvalidBidVector";
    case ErrorCode::kInconsistentExponents: return "InconsistentExponents";
    case ErrorCode::kNotAPower: return "NotAPower";
    case ErrorCode::kMissingShares: return "MissingShares";
    case ErrorCode::kModeMismatch: return "ModeMismatch";
    case ErrorCode::kAuthRejected: return "AuthRejected";
    case ErrorCode::kUnknownAuthor: return "UnknownAuthor";
    case ErrorCode::kNoiseRemovalDetected: return "NoiseRemovalDetected";
    case ErrorCode::kRestartLimit: return "RestartLimit";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kUsageError: return "UsageError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

LabError::LabError(ErrorCode code, const std::string& message,
                   std::optional<int> party)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      party_(party) {}

}  // namespace brandt
