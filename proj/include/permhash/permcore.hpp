#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "permhash/big_uint.hpp"
#include "permhash/hash_key.hpp"
#include "permhash/node_table.hpp"
#include "permhash/strategy.hpp"

namespace permhash {

// The key is consumed as mixed-radix digits, least significant first: slot i
// (0-based) takes digit key mod (i+1) and the key becomes key div (i+1).
// Each slot's symbol is inserted into the permutation built so far at the
// strategy-determined index. Free slots consume digits like occupied ones
// and are dropped from the result, which is what keeps surviving nodes'
// relative order fixed across removals. Whatever quotient remains after
// the last slot is ignored.

// Permutation of slot indices [0, slot_count) for `key`. Free slots appear
// as their own index; the caller decides how to filter them.
std::vector<std::size_t> permute_slots(std::size_t slot_count, BigUint key,
                                       InsertionStrategy strategy);

// Slot-level forms of the lookups. They do no entropy check. The *_slot
// variants return the winning slot index.
std::vector<NodeId> permute(std::span<const Slot> slots, const BigUint& key,
                            InsertionStrategy strategy);
// Head tracking without materializing the permutation. Requires no free slots.
NodeId first_simple(std::span<const Slot> slots, BigUint key, InsertionStrategy strategy);
// Head tracking that skips free slots. Requires at least one occupied slot.
NodeId first_live(std::span<const Slot> slots, BigUint key, InsertionStrategy strategy);
std::size_t first_simple_slot(std::span<const Slot> slots, BigUint key,
                              InsertionStrategy strategy);
std::size_t first_live_slot(std::span<const Slot> slots, BigUint key,
                            InsertionStrategy strategy);

// What to do when the key is too narrow for the table: a table with L slots
// needs log2(L!) bits for every permutation to be reachable, and the guard
// asks for kEntropyMarginBits on top of that.
enum class EntropyCheck { kOff, kWarn, kStrict };
inline constexpr std::size_t kEntropyMarginBits = 32;

// Called with a human-readable message on kWarn breaches. The default
// handler writes one line to stderr. Passing an empty function restores it.
void set_entropy_warning_handler(std::function<void(const std::string&)> handler);

// True when log2(slot_count!) <= source_bits - kEntropyMarginBits.
bool entropy_sufficient(std::size_t slot_count, std::size_t source_bits);

// Table-level lookups; the strategy is the table's own.
std::vector<NodeId> permute(const NodeTable& table, const HashKey& key,
                            EntropyCheck check = EntropyCheck::kWarn);
NodeId first_simple(const NodeTable& table, const HashKey& key,
                    EntropyCheck check = EntropyCheck::kWarn);
NodeId first_live(const NodeTable& table, const HashKey& key,
                  EntropyCheck check = EntropyCheck::kWarn);

// Largest n with n! <= 2^bits. bits >= 1.
std::size_t capacity(std::size_t bits);
// Smallest b with 2^b >= n! * 2^margin_bits. n >= 1.
std::size_t min_key_bits(std::size_t nodes, std::size_t margin_bits = 0);

// n! as an arbitrary-precision integer.
BigUint factorial(std::size_t n);

}  // namespace permhash
