#include "permhash/permcore.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>
#include <optional>

#include "permhash/errors.hpp"

namespace permhash {

namespace {

std::mutex g_handler_mutex;
std::function<void(const std::string&)> g_warning_handler;

void warn(const std::string& message) {
  std::function<void(const std::string&)> handler;
  {
    std::lock_guard lock(g_handler_mutex);
    handler = g_warning_handler;
  }
  if (handler) {
    handler(message);
  } else {
    std::cerr << "permhash: warning: " << message << '\n';
  }
}

void guard_entropy(std::size_t slot_count, const HashKey& key, EntropyCheck check) {
  if (check == EntropyCheck::kOff || entropy_sufficient(slot_count, key.source_bits())) return;
  const std::string message =
      "key width " + std::to_string(key.source_bits()) + " bits is below the " +
      std::to_string(min_key_bits(slot_count, kEntropyMarginBits)) + " bits recommended for " +
      std::to_string(slot_count) + " slots";
  if (check == EntropyCheck::kStrict) throw Error(ErrorCode::kEntropyInsufficient, message);
  warn(message);
}

void require_slots(std::span<const Slot> slots) {
  if (slots.empty()) throw Error(ErrorCode::kEmptyTable, "table has no slots");
}

}  // namespace

std::vector<std::size_t> permute_slots(std::size_t slot_count, BigUint key,
                                       InsertionStrategy strategy) {
  std::vector<std::size_t> order;
  order.reserve(slot_count);
  for (std::size_t slot = 0; slot < slot_count; ++slot) {
    const std::uint64_t digit = key.divmod(slot + 1);
    const std::size_t at = insertion_index(strategy, digit, order.size());
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(at), slot);
  }
  return order;
}

std::vector<NodeId> permute(std::span<const Slot> slots, const BigUint& key,
                            InsertionStrategy strategy) {
  require_slots(slots);
  std::vector<NodeId> out;
  for (std::size_t slot : permute_slots(slots.size(), key, strategy)) {
    if (slots[slot]) out.push_back(*slots[slot]);
  }
  return out;
}

std::size_t first_simple_slot(std::span<const Slot> slots, BigUint key,
                              InsertionStrategy strategy) {
  require_slots(slots);
  for (const auto& slot : slots) {
    if (!slot) throw Error(ErrorCode::kHasTombstones, "table has free slots");
  }
  std::size_t head = 0;
  for (std::size_t slot = 1; slot < slots.size(); ++slot) {
    const std::uint64_t digit = key.divmod(slot + 1);
    if (insertion_index(strategy, digit, slot) == 0) head = slot;
  }
  return head;
}

std::size_t first_live_slot(std::span<const Slot> slots, BigUint key,
                            InsertionStrategy strategy) {
  // The head of the filtered permutation is the first occupied symbol of the
  // full one. Track it together with the number of free markers in front of
  // it: a new symbol lands ahead of the head exactly when its insertion
  // index is at most that count.
  std::optional<std::size_t> head;
  std::size_t frees_ahead = 0;
  for (std::size_t slot = 0; slot < slots.size(); ++slot) {
    const std::uint64_t digit = key.divmod(slot + 1);
    const std::size_t at = insertion_index(strategy, digit, slot);
    if (head && at > frees_ahead) continue;
    if (slots[slot]) {
      head = slot;
      frees_ahead = at;
    } else {
      ++frees_ahead;
    }
  }
  if (!head) throw Error(ErrorCode::kNoLiveNodes, "table has no occupied slots");
  return *head;
}

NodeId first_simple(std::span<const Slot> slots, BigUint key, InsertionStrategy strategy) {
  return *slots[first_simple_slot(slots, std::move(key), strategy)];
}

NodeId first_live(std::span<const Slot> slots, BigUint key, InsertionStrategy strategy) {
  return *slots[first_live_slot(slots, std::move(key), strategy)];
}

void set_entropy_warning_handler(std::function<void(const std::string&)> handler) {
  std::lock_guard lock(g_handler_mutex);
  g_warning_handler = std::move(handler);
}

bool entropy_sufficient(std::size_t slot_count, std::size_t source_bits) {
  if (source_bits < kEntropyMarginBits) return false;
  return min_key_bits(std::max<std::size_t>(slot_count, 1), 0) <= source_bits - kEntropyMarginBits;
}

std::vector<NodeId> permute(const NodeTable& table, const HashKey& key, EntropyCheck check) {
  require_slots(table.slots());
  guard_entropy(table.slot_count(), key, check);
  return permute(std::span<const Slot>(table.slots()), key.value(), table.strategy());
}

NodeId first_simple(const NodeTable& table, const HashKey& key, EntropyCheck check) {
  require_slots(table.slots());
  guard_entropy(table.slot_count(), key, check);
  return first_simple(std::span<const Slot>(table.slots()), key.value(), table.strategy());
}

NodeId first_live(const NodeTable& table, const HashKey& key, EntropyCheck check) {
  if (table.live_count() == 0) throw Error(ErrorCode::kNoLiveNodes, "table has no occupied slots");
  guard_entropy(table.slot_count(), key, check);
  return first_live(std::span<const Slot>(table.slots()), key.value(), table.strategy());
}

BigUint factorial(std::size_t n) {
  BigUint f(1);
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace {

// value <= 2^bits
bool at_most_power_of_two(const BigUint& value, std::size_t bits) {
  const std::size_t len = value.bit_length();
  return len <= bits || (len == bits + 1 && value == (BigUint(1) << bits));
}

}  // namespace

std::size_t capacity(std::size_t bits) {
  if (bits == 0) throw Error(ErrorCode::kInvalidArgument, "bits must be positive");
  std::size_t n = 1;
  BigUint next(2);
  while (at_most_power_of_two(next, bits)) {
    ++n;
    next *= n + 1;
  }
  return n;
}

std::size_t min_key_bits(std::size_t nodes, std::size_t margin_bits) {
  if (nodes == 0) throw Error(ErrorCode::kInvalidArgument, "node count must be positive");
  // ceil(log2(n!))
  const BigUint f = factorial(nodes);
  std::size_t bits = f.bit_length();
  if (f == (BigUint(1) << (bits - 1))) --bits;  // exact power of two
  return bits + margin_bits;
}

}  // namespace permhash
