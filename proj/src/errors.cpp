#include "permhash/errors.hpp"

namespace permhash {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyTable: return "EMPTY_TABLE";
    case ErrorCode::kHasTombstones: return "HAS_TOMBSTONES";
    case ErrorCode::kNoLiveNodes: return "NO_LIVE_NODES";
    case ErrorCode::kWidthNotByteAligned: return "WIDTH_NOT_BYTE_ALIGNED";
    case ErrorCode::kInvalidKey: return "INVALID_KEY";
    case ErrorCode::kEntropyInsufficient: return "ENTROPY_INSUFFICIENT";
    case ErrorCode::kDuplicateNode: return "DUPLICATE_NODE";
    case ErrorCode::kNodeNotFound: return "NODE_NOT_FOUND";
    case ErrorCode::kInvalidNode: return "INVALID_NODE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kInvariantViolation: return "INVARIANT_VIOLATION";
    case ErrorCode::kPointSpaceExhausted: return "POINT_SPACE_EXHAUSTED";
    case ErrorCode::kEmptyRing: return "EMPTY_RING";
    case ErrorCode::kInvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::kBudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::kUnsupportedSize: return "UNSUPPORTED_SIZE";
    case ErrorCode::kNoSurvivors: return "NO_SURVIVORS";
    case ErrorCode::kRangeTooLarge: return "RANGE_TOO_LARGE";
    case ErrorCode::kStrategyMismatch: return "STRATEGY_MISMATCH";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace permhash
