#include "permhash/node_table.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "permhash/digest.hpp"
#include "permhash/errors.hpp"

namespace permhash {

namespace {

void require_label(const NodeId& node) {
  if (node.empty()) throw Error(ErrorCode::kInvalidNode, "node label must be non-empty");
}

}  // namespace

NodeTable NodeTable::create(std::span<const NodeId> nodes, InsertionStrategy strategy) {
  NodeTable table(strategy);
  std::set<std::string_view> seen;
  for (const auto& node : nodes) {
    require_label(node);
    if (!seen.insert(node).second) {
      throw Error(ErrorCode::kDuplicateNode, "node '" + node + "' listed more than once");
    }
    table.slots_.emplace_back(node);
  }
  return table;
}

NodeTable NodeTable::from_slots(std::vector<Slot> slots, InsertionStrategy strategy) {
  if (!slots.empty() && !slots.back().has_value()) {
    throw Error(ErrorCode::kInvariantViolation, "table ends with a free slot");
  }
  std::set<std::string_view> seen;
  for (const auto& slot : slots) {
    if (!slot) continue;
    if (slot->empty()) throw Error(ErrorCode::kInvariantViolation, "empty node label");
    if (!seen.insert(*slot).second) {
      throw Error(ErrorCode::kInvariantViolation, "duplicate node label '" + *slot + "'");
    }
  }
  NodeTable table(strategy);
  table.slots_ = std::move(slots);
  return table;
}

NodeTable NodeTable::add(const NodeId& node) const {
  require_label(node);
  if (contains(node)) {
    throw Error(ErrorCode::kDuplicateNode, "node '" + node + "' already present");
  }
  NodeTable next = *this;
  auto free = std::find_if(next.slots_.begin(), next.slots_.end(),
                           [](const Slot& s) { return !s.has_value(); });
  if (free != next.slots_.end()) {
    *free = node;
  } else {
    next.slots_.emplace_back(node);
  }
  return next;
}

NodeTable NodeTable::remove(const NodeId& node) const {
  NodeTable next = *this;
  auto it = std::find(next.slots_.begin(), next.slots_.end(), Slot(node));
  if (it == next.slots_.end()) {
    throw Error(ErrorCode::kNodeNotFound, "node '" + node + "' not in table");
  }
  it->reset();
  while (!next.slots_.empty() && !next.slots_.back().has_value()) next.slots_.pop_back();
  return next;
}

std::vector<NodeId> NodeTable::live_nodes() const {
  std::vector<NodeId> out;
  for (const auto& slot : slots_) {
    if (slot) out.push_back(*slot);
  }
  return out;
}

std::size_t NodeTable::live_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(slots_.begin(), slots_.end(), [](const Slot& s) { return s.has_value(); }));
}

bool NodeTable::contains(std::string_view node) const noexcept {
  return std::any_of(slots_.begin(), slots_.end(),
                     [&](const Slot& s) { return s && *s == node; });
}

std::string serialize(const NodeTable& table) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["strategy"] = std::string(strategy_name(table.strategy()));
  auto slots = nlohmann::ordered_json::array();
  for (const auto& slot : table.slots()) {
    slots.push_back(slot ? nlohmann::ordered_json(*slot) : nlohmann::ordered_json(nullptr));
  }
  doc["slots"] = std::move(slots);
  return doc.dump();
}

NodeTable deserialize(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError,
                "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "table document must be an object");
  const auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer() || version->get<int>() != 1) {
    throw Error(ErrorCode::kParseError, "unsupported or missing table version");
  }
  const auto strategy = doc.find("strategy");
  if (strategy == doc.end() || !strategy->is_string()) {
    throw Error(ErrorCode::kParseError, "missing strategy");
  }
  const auto slots = doc.find("slots");
  if (slots == doc.end() || !slots->is_array()) {
    throw Error(ErrorCode::kParseError, "missing slots array");
  }
  std::vector<Slot> parsed;
  for (std::size_t i = 0; i < slots->size(); ++i) {
    const auto& entry = (*slots)[i];
    if (entry.is_null()) {
      parsed.emplace_back(std::nullopt);
    } else if (entry.is_string()) {
      parsed.emplace_back(entry.get<std::string>());
    } else {
      throw Error(ErrorCode::kParseError, "slot " + std::to_string(i) + " must be a string or null");
    }
  }
  return NodeTable::from_slots(std::move(parsed), parse_strategy(strategy->get<std::string>()));
}

std::string fingerprint(const NodeTable& table) {
  const Sha512Digest digest = sha512(as_bytes(serialize(table)));
  std::string out = "sha512:";
  char buf[3];
  for (std::size_t i = 0; i < 8; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

}  // namespace permhash
