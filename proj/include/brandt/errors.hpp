#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace brandt {

enum class ErrorCode {
  kNotPrime,
  kOrderMismatch,
  kBadGenerator,
  kNotAMember,
  kEmptyShareList,
  kEmptyPartials,
  kAlreadyCommitted,
  kNotCommitted,
  kWitnessMismatch,
  kPriceOutOfRange,
  kProofRejected,
  kMalformedPayload,
  kInvalidBidVector,
  kInconsistentExponents,
  kNotAPower,
  kMissingShares,
  kModeMismatch,
  kAuthRejected,
  kUnknownAuthor,
  kNoiseRemovalDetected,
  kRestartLimit,
  kInvalidConfig,
  kUsageError,
  kIoError,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library. `party` names the offending
// bidder (1-based, 0 = seller) when the error is attributable.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& message,
           std::optional<int> party = std::nullopt);

  ErrorCode code() const { return code_; }
  std::optional<int> party() const { return party_; }

 private:
  ErrorCode code_;
  std::optional<int> party_;
};

}  // namespace brandt
