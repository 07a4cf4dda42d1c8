#include "permhash/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "permhash/errors.hpp"
#include "permhash/permcore.hpp"

namespace permhash {

namespace {

using Json = nlohmann::ordered_json;

unsigned resolve_workers(unsigned workers, std::uint64_t units) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, units)));
}

// Runs body(begin, end, worker) over contiguous blocks of [0, units).
template <typename Body>
void run_partitioned(std::uint64_t units, unsigned workers, Body body) {
  workers = resolve_workers(workers, units);
  if (workers == 1) {
    body(std::uint64_t{0}, units, 0u);
    return;
  }
  std::vector<std::thread> threads;
  const std::uint64_t per = (units + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(units, per * w);
    const std::uint64_t end = std::min(units, begin + per);
    threads.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

BigUint random_key(std::mt19937_64& rng, std::size_t bits) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(bits / 8);
  while (bytes.size() < bits / 8) {
    std::uint64_t word = rng();
    for (int i = 0; i < 8 && bytes.size() < bits / 8; ++i, word >>= 8) {
      bytes.push_back(static_cast<std::uint8_t>(word));
    }
  }
  return BigUint::from_bytes_be(bytes);
}

// Sampled keys are wide enough to reach every ordering with 64 bits to spare.
std::size_t sampled_key_bits(std::size_t slot_count) {
  const std::size_t bits = min_key_bits(std::max<std::size_t>(slot_count, 1), 64);
  return (bits + 63) / 64 * 64;
}

std::uint64_t exact_range_size(std::size_t slot_count) {
  if (slot_count > kMaxExactSlots) {
    throw Error(ErrorCode::kRangeTooLarge, "exact mode supports at most " +
                                               std::to_string(kMaxExactSlots) + " slots, table has " +
                                               std::to_string(slot_count));
  }
  return factorial(slot_count).low_u64();
}

// Calls visit(key, worker) for every key of the range.
template <typename Visit>
RangeInfo for_each_key(std::size_t slot_count, const KeyRange& range, unsigned workers,
                       Visit visit) {
  RangeInfo info;
  if (std::holds_alternative<ExactRange>(range)) {
    info.size = exact_range_size(slot_count);
    run_partitioned(info.size, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
      for (std::uint64_t k = begin; k < end; ++k) visit(BigUint(k), w);
    });
    return info;
  }
  const auto& sampled = std::get<SampledRange>(range);
  info.exact = false;
  info.size = sampled.samples;
  info.seed = sampled.seed;
  info.key_bits = sampled_key_bits(slot_count);
  const std::uint64_t chunks = (sampled.samples + kSampleChunk - 1) / kSampleChunk;
  run_partitioned(chunks, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    for (std::uint64_t chunk = begin; chunk < end; ++chunk) {
      auto rng = seeded_stream(sampled.seed, chunk);
      const std::uint64_t first = chunk * kSampleChunk;
      const std::uint64_t last = std::min(sampled.samples, first + kSampleChunk);
      for (std::uint64_t i = first; i < last; ++i) visit(random_key(rng, info.key_bits), w);
    }
  });
  return info;
}

Json range_json(const RangeInfo& range) {
  Json out;
  out["mode"] = range.exact ? "exact" : "sampled";
  out["size"] = range.size;
  if (range.seed) out["seed"] = *range.seed;
  if (!range.exact) out["key_bits"] = range.key_bits;
  return out;
}

}  // namespace

std::uint64_t CensusReport::count_of(const NodeId& node) const {
  for (const auto& [id, count] : counts) {
    if (id == node) return count;
  }
  throw Error(ErrorCode::kNodeNotFound, "node '" + node + "' not in census");
}

CensusReport census(const NodeTable& table, const KeyRange& range, unsigned workers) {
  if (table.live_count() == 0) throw Error(ErrorCode::kNoLiveNodes, "table has no live nodes");
  const auto& slots = table.slots();
  const unsigned worker_count = resolve_workers(workers, 1u << 20);
  std::vector<std::vector<std::uint64_t>> per_worker(worker_count,
                                                     std::vector<std::uint64_t>(slots.size(), 0));
  CensusReport report;
  report.range = for_each_key(slots.size(), range, worker_count,
                              [&](BigUint key, unsigned w) {
                                ++per_worker[w][first_live_slot(slots, std::move(key),
                                                                table.strategy())];
                              });
  std::vector<std::uint64_t> totals(slots.size(), 0);
  for (const auto& counts : per_worker) {
    for (std::size_t i = 0; i < counts.size(); ++i) totals[i] += counts[i];
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) continue;
    report.counts.emplace_back(*slots[i], totals[i]);
    if (!report.range.exact) {
      const double n = static_cast<double>(report.range.size);
      const double p = n > 0 ? static_cast<double>(totals[i]) / n : 0.0;
      report.standard_error.push_back(std::sqrt(n * p * (1 - p)));
    }
  }
  report.table_fingerprint = fingerprint(table);
  report.strategy = table.strategy();
  return report;
}

std::uint64_t RemapMatrix::at(const NodeId& from, const NodeId& to) const {
  const auto r = std::find(rows.begin(), rows.end(), from);
  const auto c = std::find(cols.begin(), cols.end(), to);
  if (r == rows.end() || c == cols.end()) return 0;
  return counts[static_cast<std::size_t>(r - rows.begin())][static_cast<std::size_t>(c - cols.begin())];
}

std::vector<std::uint64_t> RemapMatrix::column(const NodeId& to) const {
  std::vector<std::uint64_t> out;
  for (const auto& from : rows) out.push_back(at(from, to));
  return out;
}

std::vector<std::uint64_t> RemapMatrix::row(const NodeId& from) const {
  std::vector<std::uint64_t> out;
  for (const auto& to : cols) out.push_back(at(from, to));
  return out;
}

bool RemapMatrix::moves_only_into(const NodeId& node) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (counts[r][c] != 0 && rows[r] != cols[c] && cols[c] != node) return false;
    }
  }
  return true;
}

bool RemapMatrix::moves_only_from(const NodeId& node) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (counts[r][c] != 0 && rows[r] != cols[c] && rows[r] != node) return false;
    }
  }
  return true;
}

RemapMatrix remap_matrix(const NodeTable& before, const NodeTable& after, const KeyRange& range,
                         unsigned workers) {
  if (before.strategy() != after.strategy()) {
    throw Error(ErrorCode::kStrategyMismatch, "tables use different insertion strategies");
  }
  if (before.live_count() == 0 || after.live_count() == 0) {
    throw Error(ErrorCode::kNoLiveNodes, "both tables need live nodes");
  }
  const auto& b = before.slots();
  const auto& a = after.slots();
  const std::size_t slot_count = std::max(b.size(), a.size());
  const unsigned worker_count = resolve_workers(workers, 1u << 20);
  // Indexed by slot: [before_slot * a.size() + after_slot].
  std::vector<std::vector<std::uint64_t>> per_worker(
      worker_count, std::vector<std::uint64_t>(b.size() * a.size(), 0));
  RemapMatrix m;
  m.range = for_each_key(slot_count, range, worker_count, [&](BigUint key, unsigned w) {
    const std::size_t from = first_live_slot(b, key, before.strategy());
    const std::size_t to = first_live_slot(a, std::move(key), after.strategy());
    ++per_worker[w][from * a.size() + to];
  });
  std::vector<std::size_t> row_slots;
  std::vector<std::size_t> col_slots;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) {
      m.rows.push_back(*b[i]);
      row_slots.push_back(i);
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]) {
      m.cols.push_back(*a[i]);
      col_slots.push_back(i);
    }
  }
  m.counts.assign(m.rows.size(), std::vector<std::uint64_t>(m.cols.size(), 0));
  for (std::size_t r = 0; r < row_slots.size(); ++r) {
    for (std::size_t c = 0; c < col_slots.size(); ++c) {
      std::uint64_t total = 0;
      for (const auto& counts : per_worker) total += counts[row_slots[r] * a.size() + col_slots[c]];
      m.counts[r][c] = total;
      (m.rows[r] == m.cols[c] ? m.unmoved : m.moved) += total;
    }
  }
  m.before_fingerprint = fingerprint(before);
  m.after_fingerprint = fingerprint(after);
  m.strategy = before.strategy();
  return m;
}

std::uint64_t simple_mod_hash(const HashKey& key, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  return key.value().mod(n);
}

std::string Fraction::str() const {
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

SurvivalReport simple_mod_survival(std::uint64_t n, std::uint64_t periods) {
  if (n == 0 || periods == 0) throw Error(ErrorCode::kInvalidArgument, "n and m must be positive");
  SurvivalReport report;
  report.n = n;
  report.periods = periods;
  report.keys = n * (n + 1) * periods;
  for (std::uint64_t key = 0; key < report.keys; ++key) {
    const HashKey k = HashKey::from_u64(key);
    if (simple_mod_hash(k, n) == simple_mod_hash(k, n + 1)) ++report.survivors;
  }
  const std::uint64_t g = std::gcd(report.survivors, report.keys);
  report.fraction = {report.survivors / g, report.keys / g};
  return report;
}

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  const double mu = mean_of(v);
  double ss = 0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

constexpr double kTwoTo64 = 18446744073709551616.0;

// Sorted random points for one trial, tagged with their owning node.
std::vector<std::pair<std::uint64_t, std::uint32_t>> random_ring(std::mt19937_64& rng,
                                                                 std::size_t nodes,
                                                                 std::size_t replicas) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> points;
  points.reserve(nodes * replicas);
  for (std::size_t node = 0; node < nodes; ++node) {
    for (std::size_t r = 0; r < replicas; ++r) {
      points.emplace_back(rng(), static_cast<std::uint32_t>(node));
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

double median_of(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2;
}

}  // namespace

SpreadStats ring_spread_stats(std::size_t nodes, std::size_t replicas, std::size_t trials,
                              std::uint64_t seed, unsigned workers) {
  if (trials < 100) throw Error(ErrorCode::kInvalidArgument, "trials must be at least 100");
  if (nodes == 0 || replicas == 0) {
    throw Error(ErrorCode::kInvalidArgument, "nodes and replicas must be positive");
  }
  SpreadStats stats{nodes, replicas, trials, seed};
  if (nodes == 1) {
    stats.mean_min_ratio = stats.max_mean_ratio = 1.0;
    return stats;
  }
  std::vector<double> mean_min(trials);
  std::vector<double> max_mean(trials);
  run_partitioned(trials, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    std::vector<double> load(nodes);
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      auto rng = seeded_stream(seed, trial);
      const auto points = random_ring(rng, nodes, replicas);
      std::fill(load.begin(), load.end(), 0.0);
      std::uint64_t previous = points.back().first;
      for (const auto& [point, owner] : points) {
        load[owner] += static_cast<double>(point - previous) / kTwoTo64;
        previous = point;
      }
      const double mean = std::accumulate(load.begin(), load.end(), 0.0) / static_cast<double>(nodes);
      const auto [lo, hi] = std::minmax_element(load.begin(), load.end());
      mean_min[trial] = mean / *lo;
      max_mean[trial] = *hi / mean;
    }
  });
  stats.mean_min_ratio = mean_of(mean_min);
  stats.mean_min_stderr = stderr_of(mean_min);
  stats.max_mean_ratio = mean_of(max_mean);
  stats.max_mean_stderr = stderr_of(max_mean);
  return stats;
}

MedianMeanStats ring_median_mean(std::size_t points, std::size_t trials, std::uint64_t seed,
                                 unsigned workers) {
  if (trials < 10000) throw Error(ErrorCode::kInvalidArgument, "trials must be at least 10000");
  if (points == 0) throw Error(ErrorCode::kInvalidArgument, "points must be positive");
  MedianMeanStats stats{points, trials, seed};
  if (points == 1) {
    stats.pooled_ratio = stats.per_trial_ratio = 1.0;
    return stats;
  }
  std::vector<double> pooled(points * trials);
  std::vector<double> per_trial(trials);
  run_partitioned(trials, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    std::vector<double> lengths(points);
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      auto rng = seeded_stream(seed, trial);
      const auto ring = random_ring(rng, points, 1);
      std::uint64_t previous = ring.back().first;
      for (std::size_t i = 0; i < ring.size(); ++i) {
        lengths[i] = static_cast<double>(ring[i].first - previous) / kTwoTo64;
        previous = ring[i].first;
      }
      std::copy(lengths.begin(), lengths.end(),
                pooled.begin() + static_cast<std::ptrdiff_t>(trial * points));
      per_trial[trial] = median_of(lengths) / mean_of(lengths);
    }
  });
  const double mean = mean_of(pooled);
  stats.pooled_ratio = median_of(pooled) / mean;
  stats.per_trial_ratio = mean_of(per_trial);
  return stats;
}

std::vector<OwnershipChange> ring_ownership_changes(const RingState& before,
                                                    const RingState& after) {
  if (before.points().empty() || after.points().empty()) {
    throw Error(ErrorCode::kEmptyRing, "both rings need points");
  }
  if (before.config().point_bits != after.config().point_bits) {
    throw Error(ErrorCode::kInvalidConfig, "rings use different point widths");
  }
  // Between consecutive breakpoints of either ring both owners are constant,
  // so comparing owners at each breakpoint covers the whole circle.
  std::set<std::uint64_t> breaks;
  for (const auto& [p, owner] : before.points()) breaks.insert(p);
  for (const auto& [p, owner] : after.points()) breaks.insert(p);
  const ArcLength perimeter = before.config().perimeter();
  std::map<std::pair<NodeId, NodeId>, ArcLength> moved;
  std::uint64_t previous = *breaks.rbegin();
  for (std::uint64_t p : breaks) {
    const ArcLength length =
        breaks.size() == 1 ? perimeter
                           : (p > previous ? ArcLength{p - previous} : perimeter - previous + p);
    previous = p;
    const NodeId& from = before.owner_of(p);
    const NodeId& to = after.owner_of(p);
    if (from != to) moved[{from, to}] += length;
  }
  std::vector<OwnershipChange> out;
  for (const auto& [pair, length] : moved) out.push_back({pair.first, pair.second, length});
  return out;
}

std::string to_json(const CensusReport& report) {
  Json doc;
  doc["kind"] = "census";
  doc["table"] = report.table_fingerprint;
  doc["strategy"] = std::string(strategy_name(report.strategy));
  doc["range"] = range_json(report.range);
  Json counts = Json::object();
  for (const auto& [node, count] : report.counts) counts[node] = count;
  doc["counts"] = std::move(counts);
  if (!report.range.exact) {
    Json errors = Json::object();
    for (std::size_t i = 0; i < report.counts.size(); ++i) {
      errors[report.counts[i].first] = report.standard_error[i];
    }
    doc["standard_error"] = std::move(errors);
  }
  return doc.dump();
}

std::string to_csv(const CensusReport& report) {
  std::ostringstream out;
  out << "node,count\n";
  for (const auto& [node, count] : report.counts) out << node << ',' << count << '\n';
  return out.str();
}

std::string to_json(const RemapMatrix& m) {
  Json doc;
  doc["kind"] = "remap";
  doc["before"] = m.before_fingerprint;
  doc["after"] = m.after_fingerprint;
  doc["strategy"] = std::string(strategy_name(m.strategy));
  doc["range"] = range_json(m.range);
  doc["rows"] = m.rows;
  doc["cols"] = m.cols;
  doc["counts"] = m.counts;
  doc["moved"] = m.moved;
  doc["unmoved"] = m.unmoved;
  return doc.dump();
}

std::string to_csv(const RemapMatrix& m) {
  std::ostringstream out;
  out << "from,to,count\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (std::size_t c = 0; c < m.cols.size(); ++c) {
      out << m.rows[r] << ',' << m.cols[c] << ',' << m.counts[r][c] << '\n';
    }
  }
  return out.str();
}

std::string to_json(const SurvivalReport& report) {
  Json doc;
  doc["kind"] = "survival";
  doc["n"] = report.n;
  doc["m"] = report.periods;
  doc["keys"] = report.keys;
  doc["survivors"] = report.survivors;
  doc["fraction"] = report.fraction.str();
  return doc.dump();
}

std::string to_csv(const SurvivalReport& report) {
  std::ostringstream out;
  out << "n,m,keys,survivors,fraction\n"
      << report.n << ',' << report.periods << ',' << report.keys << ',' << report.survivors << ','
      << report.fraction.str() << '\n';
  return out.str();
}

}  // namespace permhash
