#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permhash/strategy.hpp"

namespace permhash {

// Node labels are non-empty byte strings.
using NodeId = std::string;

// An occupied slot holds a node; an empty optional is a free slot left
// behind by a removal.
using Slot = std::optional<NodeId>;

// Ordered slots describing the current node set and the order in which the
// nodes were added. Slot i is consumed by the i-th layer of the permutation
// tree, so slot indices of surviving nodes never move.
//
// Invariants: the last slot (if any) is occupied; occupied labels are
// distinct and non-empty. Values are immutable: add/remove return new tables.
class NodeTable {
 public:
  explicit NodeTable(InsertionStrategy strategy = kDefaultStrategy) : strategy_(strategy) {}

  // All slots occupied, in the given order. Throws kDuplicateNode/kInvalidNode.
  static NodeTable create(std::span<const NodeId> nodes,
                          InsertionStrategy strategy = kDefaultStrategy);
  // Validates the invariants; throws kInvariantViolation.
  static NodeTable from_slots(std::vector<Slot> slots, InsertionStrategy strategy);

  // Fills the lowest-index free slot, else appends.
  NodeTable add(const NodeId& node) const;
  // Frees the node's slot, then drops all trailing free slots.
  NodeTable remove(const NodeId& node) const;

  const std::vector<Slot>& slots() const noexcept { return slots_; }
  InsertionStrategy strategy() const noexcept { return strategy_; }

  std::vector<NodeId> live_nodes() const;
  std::size_t slot_count() const noexcept { return slots_.size(); }
  std::size_t live_count() const noexcept;
  bool has_free_slots() const noexcept { return live_count() != slot_count(); }
  bool contains(std::string_view node) const noexcept;

  friend bool operator==(const NodeTable&, const NodeTable&) = default;

 private:
  std::vector<Slot> slots_;
  InsertionStrategy strategy_;
};

// Canonical JSON: {"version":1,"strategy":"from_start","slots":["a",null,"c"]}
std::string serialize(const NodeTable& table);
// Throws kParseError (with byte position) or kInvariantViolation.
NodeTable deserialize(std::string_view text);

// Short stable identifier of a table's canonical form ("sha512:" + 16 hex).
std::string fingerprint(const NodeTable& table);

}  // namespace permhash
