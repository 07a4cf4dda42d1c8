#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permhash/big_uint.hpp"
#include "permhash/node_table.hpp"

namespace permhash {

// Universal cycles of shorthand permutations: a cyclic sequence of length n!
// over n symbols in which every cyclic window of n-1 symbols is a distinct
// arrangement of n-1 of the symbols. Laid out as n! equal segments of a
// circle, such a cycle stays exactly uniform when symbols are removed by
// handing each removed segment to the next surviving symbol.

struct CycleCheck {
  bool valid = true;
  // Index of the first offending window (or symbol, for foreign symbols).
  std::optional<std::size_t> first_violation;
  std::string reason;
};

CycleCheck verify_cycle(std::span<const NodeId> symbols, std::span<const NodeId> node_set);

// Default node-expansion budget for build_cycle.
inline constexpr std::uint64_t kDefaultCycleBudget = 100'000'000;

// Depth-first search for a Hamiltonian cycle over shorthand permutations,
// starting from node_set[0..n-2] and trying successors in node_set order.
// Supports 1 <= n <= 6; n = 6 may exhaust `budget` (kBudgetExceeded).
// n > 6 throws kUnsupportedSize.
std::vector<NodeId> build_cycle(std::span<const NodeId> node_set,
                                std::uint64_t budget = kDefaultCycleBudget);

// Replaces every removed symbol with the next surviving symbol in cyclic
// order. Survivors keep their positions. Throws kNoSurvivors.
std::vector<NodeId> substitute_removed(std::span<const NodeId> symbols,
                                       std::span<const NodeId> removed);

// Symbol at index key mod len after substitution of `removed`.
NodeId cycle_lookup(std::span<const NodeId> symbols, const BigUint& key,
                    std::span<const NodeId> removed = {});

std::map<NodeId, std::size_t> count_symbols(std::span<const NodeId> symbols);

// Distinct symbols in order of first appearance.
std::vector<NodeId> symbol_set(std::span<const NodeId> symbols);

}  // namespace permhash
