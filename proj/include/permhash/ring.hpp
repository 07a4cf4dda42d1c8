#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permhash/hash_key.hpp"
#include "permhash/node_table.hpp"

namespace permhash {

// Classic circle algorithm: every node owns `replicas` points on a circle of
// perimeter 2^point_bits, and a key belongs to the owner of the first point
// at or after the key's own point (wrapping). A point owns the half-open arc
// (previous point, point].

// Arc lengths can reach 2^64 on a 64-bit circle with a single point.
using ArcLength = unsigned __int128;

struct RingConfig {
  unsigned point_bits = 32;  // 32 or 64
  std::size_t replicas = 1;  // points per node, >= 1

  // Throws kInvalidConfig.
  void validate() const;
  ArcLength perimeter() const { return ArcLength{1} << point_bits; }

  friend bool operator==(const RingConfig&, const RingConfig&) = default;
};

enum class RingEvent { kAdd, kRemove };

struct RingLogEntry {
  NodeId node;
  RingEvent event;
  friend bool operator==(const RingLogEntry&, const RingLogEntry&) = default;
};

struct Segment {
  std::uint64_t end;  // the owning point; the arc is (previous point, end]
  ArcLength length;
  NodeId owner;
};

// Collision attempts per replica before a node addition is abandoned.
inline constexpr std::uint32_t kMaxPointAttempts = 1u << 16;

// Leading `point_bits` bits of
// SHA-512(label || 0x00 || replica as u32 BE || 0x00 || attempt as u32 BE).
std::uint64_t ring_point(std::string_view label, std::uint32_t replica, std::uint32_t attempt,
                         unsigned point_bits);

// A key's position on the circle: its leading point_bits bits.
std::uint64_t key_point(const HashKey& key, unsigned point_bits);

// Immutable ring snapshot. The points are a pure function of the config and
// the insertion log; a contested point stays with its incumbent and the
// newcomer retries with the next attempt number.
class RingState {
 public:
  explicit RingState(RingConfig config);

  static RingState replay(RingConfig config, std::span<const RingLogEntry> log);

  // Throws kDuplicateNode or kPointSpaceExhausted.
  RingState add(const NodeId& node) const;
  // Throws kNodeNotFound.
  RingState remove(const NodeId& node) const;

  // Throws kEmptyRing.
  NodeId lookup(const HashKey& key) const;
  const NodeId& owner_of(std::uint64_t point) const;

  // Arcs in ascending point order; lengths sum to the perimeter.
  std::vector<Segment> segments() const;
  std::vector<ArcLength> segment_lengths() const;

  const RingConfig& config() const noexcept { return config_; }
  const std::map<std::uint64_t, NodeId>& points() const noexcept { return points_; }
  const std::vector<RingLogEntry>& log() const noexcept { return log_; }
  std::vector<NodeId> nodes() const;
  bool contains(const NodeId& node) const { return node_points_.count(node) != 0; }

  friend bool operator==(const RingState& a, const RingState& b) {
    return a.config_ == b.config_ && a.points_ == b.points_ && a.log_ == b.log_;
  }

 private:
  RingConfig config_;
  std::map<std::uint64_t, NodeId> points_;
  std::map<NodeId, std::vector<std::uint64_t>> node_points_;
  std::vector<RingLogEntry> log_;
};

// {"version":1,"point_bits":32,"replicas_k":3,"log":[["alpha","add"],...]}
std::string serialize_ring(const RingState& ring);
// Replays the stored log. Throws kParseError or the replay's own errors.
RingState deserialize_ring(std::string_view text);

}  // namespace permhash
