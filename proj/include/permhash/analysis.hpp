#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "permhash/hash_key.hpp"
#include "permhash/node_table.hpp"
#include "permhash/ring.hpp"

namespace permhash {

// Every key in [0, slot_count!). Limited to kMaxExactSlots slots.
struct ExactRange {};
// `samples` uniformly random keys from a seeded generator.
struct SampledRange {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};
using KeyRange = std::variant<ExactRange, SampledRange>;

inline constexpr std::size_t kMaxExactSlots = 8;

// Keys are drawn in fixed-size chunks, each from a generator seeded by
// (seed, chunk index), so results do not depend on the worker count.
inline constexpr std::uint64_t kSampleChunk = 4096;

struct RangeInfo {
  bool exact = true;
  std::uint64_t size = 0;
  std::optional<std::uint64_t> seed;
  std::size_t key_bits = 0;  // width of sampled keys; 0 in exact mode
};

struct CensusReport {
  // First-position hits per live node, in slot order.
  std::vector<std::pair<NodeId, std::uint64_t>> counts;
  // Binomial standard error of each count (sampled mode only).
  std::vector<double> standard_error;
  RangeInfo range;
  std::string table_fingerprint;
  InsertionStrategy strategy = kDefaultStrategy;

  std::uint64_t count_of(const NodeId& node) const;
};

// Throws kNoLiveNodes or kRangeTooLarge. workers == 0 picks hardware
// concurrency.
CensusReport census(const NodeTable& table, const KeyRange& range, unsigned workers = 0);

struct RemapMatrix {
  std::vector<NodeId> rows;  // live nodes before, slot order
  std::vector<NodeId> cols;  // live nodes after, slot order
  std::vector<std::vector<std::uint64_t>> counts;  // counts[row][col]
  std::uint64_t moved = 0;
  std::uint64_t unmoved = 0;
  RangeInfo range;
  std::string before_fingerprint;
  std::string after_fingerprint;
  InsertionStrategy strategy = kDefaultStrategy;

  std::uint64_t at(const NodeId& from, const NodeId& to) const;
  std::vector<std::uint64_t> column(const NodeId& to) const;
  std::vector<std::uint64_t> row(const NodeId& from) const;
  // True when every key that changed owner moved to `node`.
  bool moves_only_into(const NodeId& node) const;
  // True when every key that changed owner came from `node`.
  bool moves_only_from(const NodeId& node) const;
};

// Owner of each key before and after. Exact mode covers
// max(slot counts)! keys. Throws kStrategyMismatch, kRangeTooLarge,
// kNoLiveNodes.
RemapMatrix remap_matrix(const NodeTable& before, const NodeTable& after, const KeyRange& range,
                         unsigned workers = 0);

// key mod n.
std::uint64_t simple_mod_hash(const HashKey& key, std::uint64_t n);

struct Fraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  std::string str() const;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct SurvivalReport {
  std::uint64_t n = 0;
  std::uint64_t periods = 0;
  std::uint64_t keys = 0;
  std::uint64_t survivors = 0;
  Fraction fraction;  // reduced survivors/keys
};

// Counts keys in [0, n(n+1)m) that keep their index when the modulus grows
// from n to n+1.
SurvivalReport simple_mod_survival(std::uint64_t n, std::uint64_t periods);

struct SpreadStats {
  std::size_t nodes = 0;
  std::size_t replicas = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double mean_min_ratio = 0;  // mean load / smallest per-node load
  double mean_min_stderr = 0;
  double max_mean_ratio = 0;  // largest per-node load / mean load
  double max_mean_stderr = 0;
};

// Fresh random rings (uniform 64-bit points) per trial; per-node load is the
// total arc length the node owns. trials >= 100.
SpreadStats ring_spread_stats(std::size_t nodes, std::size_t replicas, std::size_t trials,
                              std::uint64_t seed, unsigned workers = 0);

struct MedianMeanStats {
  std::size_t points = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double pooled_ratio = 0;     // median / mean over all segments of all trials
  double per_trial_ratio = 0;  // average of each trial's median / mean
};

// Segment-length skew of random single-point-per-node rings. trials >= 10^4.
MedianMeanStats ring_median_mean(std::size_t points, std::size_t trials, std::uint64_t seed,
                                 unsigned workers = 0);

struct OwnershipChange {
  NodeId from;
  NodeId to;
  ArcLength length = 0;
};

// Exact comparison of two rings over the whole circle: the arcs whose owner
// differs, aggregated per (from, to) pair.
std::vector<OwnershipChange> ring_ownership_changes(const RingState& before,
                                                    const RingState& after);

// Canonical JSON (stable key order) and CSV renderings.
std::string to_json(const CensusReport& report);
std::string to_csv(const CensusReport& report);
std::string to_json(const RemapMatrix& matrix);
std::string to_csv(const RemapMatrix& matrix);
std::string to_json(const SurvivalReport& report);
std::string to_csv(const SurvivalReport& report);

}  // namespace permhash
