#include "permhash/strategy.hpp"

#include <string>

#include "permhash/errors.hpp"

namespace permhash {

std::string_view strategy_name(InsertionStrategy strategy) noexcept {
  return strategy == InsertionStrategy::kFromStart ? "from_start" : "from_end";
}

InsertionStrategy parse_strategy(std::string_view name) {
  if (name == "from_start") return InsertionStrategy::kFromStart;
  if (name == "from_end") return InsertionStrategy::kFromEnd;
  throw Error(ErrorCode::kParseError, "unknown insertion strategy '" + std::string(name) + "'");
}

}  // namespace permhash
