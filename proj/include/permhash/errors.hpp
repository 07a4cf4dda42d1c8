#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permhash {

enum class ErrorCode {
  kEmptyTable,
  kHasTombstones,
  kNoLiveNodes,
  kWidthNotByteAligned,
  kInvalidKey,
  kEntropyInsufficient,
  kDuplicateNode,
  kNodeNotFound,
  kInvalidNode,
  kParseError,
  kInvariantViolation,
  kPointSpaceExhausted,
  kEmptyRing,
  kInvalidConfig,
  kBudgetExceeded,
  kUnsupportedSize,
  kNoSurvivors,
  kRangeTooLarge,
  kStrategyMismatch,
  kInvalidArgument,
};

// Stable upper-snake name used in CLI error documents.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace permhash
