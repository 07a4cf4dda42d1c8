#include "permhash/ring.hpp"

#include "json.hpp"
#include "permhash/digest.hpp"
#include "permhash/errors.hpp"

namespace permhash {

void RingConfig::validate() const {
  if (point_bits != 32 && point_bits != 64) {
    throw Error(ErrorCode::kInvalidConfig, "point_bits must be 32 or 64");
  }
  if (replicas == 0) throw Error(ErrorCode::kInvalidConfig, "replicas_k must be at least 1");
}

std::uint64_t ring_point(std::string_view label, std::uint32_t replica, std::uint32_t attempt,
                         unsigned point_bits) {
  std::vector<std::uint8_t> input(label.begin(), label.end());
  input.push_back(0x00);
  append_u32_be(input, replica);
  input.push_back(0x00);
  append_u32_be(input, attempt);
  const Sha512Digest digest = sha512(input);
  std::uint64_t top = 0;
  for (std::size_t i = 0; i < 8; ++i) top = (top << 8) | digest[i];
  return point_bits == 64 ? top : top >> (64 - point_bits);
}

std::uint64_t key_point(const HashKey& key, unsigned point_bits) {
  return key.leading_bits(point_bits).low_u64();
}

RingState::RingState(RingConfig config) : config_(config) { config_.validate(); }

RingState RingState::replay(RingConfig config, std::span<const RingLogEntry> log) {
  RingState state(config);
  for (const auto& entry : log) {
    state = entry.event == RingEvent::kAdd ? state.add(entry.node) : state.remove(entry.node);
  }
  return state;
}

RingState RingState::add(const NodeId& node) const {
  if (node.empty()) throw Error(ErrorCode::kInvalidNode, "node label must be non-empty");
  if (contains(node)) throw Error(ErrorCode::kDuplicateNode, "node '" + node + "' already on ring");
  RingState next = *this;
  auto& owned = next.node_points_[node];
  for (std::uint32_t replica = 0; replica < config_.replicas; ++replica) {
    std::uint32_t attempt = 0;
    std::uint64_t point = ring_point(node, replica, attempt, config_.point_bits);
    while (next.points_.count(point) != 0) {
      if (++attempt >= kMaxPointAttempts) {
        throw Error(ErrorCode::kPointSpaceExhausted,
                    "no free point for '" + node + "' replica " + std::to_string(replica));
      }
      point = ring_point(node, replica, attempt, config_.point_bits);
    }
    next.points_.emplace(point, node);
    owned.push_back(point);
  }
  next.log_.push_back({node, RingEvent::kAdd});
  return next;
}

RingState RingState::remove(const NodeId& node) const {
  auto it = node_points_.find(node);
  if (it == node_points_.end()) {
    throw Error(ErrorCode::kNodeNotFound, "node '" + node + "' not on ring");
  }
  RingState next = *this;
  for (std::uint64_t point : it->second) next.points_.erase(point);
  next.node_points_.erase(node);
  next.log_.push_back({node, RingEvent::kRemove});
  return next;
}

const NodeId& RingState::owner_of(std::uint64_t point) const {
  if (points_.empty()) throw Error(ErrorCode::kEmptyRing, "ring has no points");
  auto it = points_.lower_bound(point);
  if (it == points_.end()) it = points_.begin();
  return it->second;
}

NodeId RingState::lookup(const HashKey& key) const {
  return owner_of(key_point(key, config_.point_bits));
}

std::vector<Segment> RingState::segments() const {
  if (points_.empty()) throw Error(ErrorCode::kEmptyRing, "ring has no points");
  std::vector<Segment> out;
  out.reserve(points_.size());
  const ArcLength perimeter = config_.perimeter();
  std::uint64_t previous = points_.rbegin()->first;
  for (const auto& [point, owner] : points_) {
    ArcLength length = point > previous ? ArcLength{point - previous}
                                        : perimeter - previous + point;
    out.push_back({point, length, owner});
    previous = point;
  }
  return out;
}

std::vector<ArcLength> RingState::segment_lengths() const {
  std::vector<ArcLength> out;
  for (const auto& segment : segments()) out.push_back(segment.length);
  return out;
}

std::vector<NodeId> RingState::nodes() const {
  std::vector<NodeId> out;
  for (const auto& [node, points] : node_points_) out.push_back(node);
  return out;
}

std::string serialize_ring(const RingState& ring) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["point_bits"] = ring.config().point_bits;
  doc["replicas_k"] = ring.config().replicas;
  auto log = nlohmann::ordered_json::array();
  for (const auto& entry : ring.log()) {
    log.push_back({entry.node, entry.event == RingEvent::kAdd ? "add" : "remove"});
  }
  doc["log"] = std::move(log);
  return doc.dump();
}

RingState deserialize_ring(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError,
                "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("version", 0) != 1) {
    throw Error(ErrorCode::kParseError, "unsupported or missing ring version");
  }
  RingConfig config;
  try {
    config.point_bits = doc.at("point_bits").get<unsigned>();
    config.replicas = doc.at("replicas_k").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("bad ring config: ") + e.what());
  }
  const auto log = doc.find("log");
  if (log == doc.end() || !log->is_array()) throw Error(ErrorCode::kParseError, "missing log array");
  std::vector<RingLogEntry> entries;
  for (std::size_t i = 0; i < log->size(); ++i) {
    const auto& item = (*log)[i];
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string()) {
      throw Error(ErrorCode::kParseError, "log entry " + std::to_string(i) + " must be [node, event]");
    }
    const auto event = item[1].get<std::string>();
    if (event != "add" && event != "remove") {
      throw Error(ErrorCode::kParseError, "log entry " + std::to_string(i) + " has unknown event");
    }
    entries.push_back({item[0].get<std::string>(), event == "add" ? RingEvent::kAdd : RingEvent::kRemove});
  }
  return RingState::replay(config, entries);
}

}  // namespace permhash
