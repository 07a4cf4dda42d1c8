#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace permhash {

// Where a layer inserts its symbol into the permutation received from the
// layer above, given the digit d in [0, L] for a permutation of length L.
enum class InsertionStrategy {
  kFromStart,  // index d (the head counts as position 0)
  kFromEnd,    // index L - d (distance from the end)
};

constexpr InsertionStrategy kDefaultStrategy = InsertionStrategy::kFromStart;

constexpr std::size_t insertion_index(InsertionStrategy strategy, std::uint64_t digit,
                                      std::size_t length) noexcept {
  return strategy == InsertionStrategy::kFromStart ? static_cast<std::size_t>(digit)
                                                   : length - static_cast<std::size_t>(digit);
}

// "from_start" / "from_end".
std::string_view strategy_name(InsertionStrategy strategy) noexcept;
// Throws Error(kParseError) for unknown names.
InsertionStrategy parse_strategy(std::string_view name);

}  // namespace permhash
