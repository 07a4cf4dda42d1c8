#include "permhash/ucycle.hpp"

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "paper_fixtures.hpp"
#include "permhash/errors.hpp"

namespace permhash {
namespace {

using fixtures::kCycle24;
using fixtures::kFourNodes;

const std::vector<NodeId> kThree{"alpha", "beta", "gamma"};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(VerifyCycle, PaperCycles) {
  EXPECT_TRUE(verify_cycle(kCycle24, kFourNodes).valid);
  const std::vector<NodeId> six{"alpha", "beta", "alpha", "gamma", "beta", "gamma"};
  EXPECT_TRUE(verify_cycle(six, kThree).valid);
}

TEST(VerifyCycle, ReportsFirstBadWindow) {
  const std::vector<NodeId> bad{"alpha", "beta", "alpha", "beta", "gamma", "gamma"};
  const CycleCheck check = verify_cycle(bad, kThree);
  EXPECT_FALSE(check.valid);
  // Windows: ab, ba, ab (repeat), bg, gg, ga.
  ASSERT_TRUE(check.first_violation.has_value());
  EXPECT_EQ(*check.first_violation, 2u);

  EXPECT_FALSE(verify_cycle(std::vector<NodeId>{"alpha", "beta"}, kThree).valid);
  const std::vector<NodeId> foreign{"alpha", "beta", "alpha", "zeta", "beta", "gamma"};
  const CycleCheck f = verify_cycle(foreign, kThree);
  EXPECT_FALSE(f.valid);
  EXPECT_EQ(f.first_violation, std::optional<std::size_t>(3));
}

TEST(BuildCycle, SmallSizesVerify) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto nodes = oracle::labels(n);
    const auto cycle = build_cycle(nodes);
    EXPECT_EQ(cycle.size(), oracle::fact(n));
    EXPECT_TRUE(verify_cycle(cycle, nodes).valid) << n;
  }
  const std::vector<NodeId> two{"alpha", "beta"};
  EXPECT_EQ(build_cycle(two), two);
}

TEST(BuildCycle, Deterministic) {
  const auto nodes = oracle::labels(4);
  EXPECT_EQ(build_cycle(nodes), build_cycle(nodes));
}

TEST(BuildCycle, Limits) {
  EXPECT_EQ(code_of([] { build_cycle(oracle::labels(7)); }), ErrorCode::kUnsupportedSize);
  EXPECT_EQ(code_of([] { build_cycle(oracle::labels(5), 10); }), ErrorCode::kBudgetExceeded);
  const std::vector<NodeId> dup{"a", "a"};
  EXPECT_EQ(code_of([&] { build_cycle(dup); }), ErrorCode::kDuplicateNode);
}

TEST(SubstituteRemoved, PaperSequences) {
  const std::vector<NodeId> gamma{"gamma"};
  const auto no_gamma = substitute_removed(kCycle24, gamma);
  EXPECT_EQ(no_gamma, fixtures::kCycle24NoGamma);
  const std::vector<NodeId> delta{"delta"};
  EXPECT_EQ(substitute_removed(no_gamma, delta), fixtures::kCycle24NoGammaDelta);
  const std::vector<NodeId> both{"gamma", "delta"};
  EXPECT_EQ(substitute_removed(kCycle24, both), fixtures::kCycle24NoGammaDelta);
  EXPECT_EQ(substitute_removed(kCycle24, {}), kCycle24);
}

TEST(SubstituteRemoved, WrapsAndErrors) {
  const std::vector<NodeId> seq{"a", "b", "c"};
  const std::vector<NodeId> c{"c"};
  EXPECT_EQ(substitute_removed(seq, c), (std::vector<NodeId>{"a", "b", "a"}));
  const std::vector<NodeId> all{"a", "b", "c"};
  EXPECT_EQ(code_of([&] { substitute_removed(seq, all); }), ErrorCode::kNoSurvivors);
}

TEST(CycleLookup, Counts) {
  std::map<NodeId, int> counts;
  for (std::uint64_t key = 0; key < 24; ++key) ++counts[cycle_lookup(kCycle24, BigUint(key))];
  for (const auto& node : kFourNodes) EXPECT_EQ(counts[node], 6);

  const std::vector<NodeId> gamma{"gamma"};
  counts.clear();
  for (std::uint64_t key = 0; key < 24; ++key) {
    ++counts[cycle_lookup(kCycle24, BigUint(key), gamma)];
  }
  EXPECT_EQ(counts.count("gamma"), 0u);
  for (const NodeId node : {"alpha", "beta", "delta"}) EXPECT_EQ(counts[node], 8);

  const std::vector<NodeId> three{"beta", "gamma", "delta"};
  for (std::uint64_t key = 0; key < 48; ++key) {
    EXPECT_EQ(cycle_lookup(kCycle24, BigUint(key), three), "alpha");
  }
  EXPECT_EQ(code_of([&] { cycle_lookup(kCycle24, BigUint(0), kFourNodes); }),
            ErrorCode::kNoSurvivors);
  // Large keys reduce mod 24.
  EXPECT_EQ(cycle_lookup(kCycle24, BigUint(24 * 1000 + 2)), "gamma");
}

TEST(CountSymbols, Histograms) {
  const auto h = count_symbols(kCycle24);
  for (const auto& node : kFourNodes) EXPECT_EQ(h.at(node), 6u);
  EXPECT_TRUE(count_symbols({}).empty());
  const auto h2 = count_symbols(fixtures::kCycle24NoGammaDelta);
  EXPECT_EQ(h2.size(), 2u);
  EXPECT_EQ(h2.at("alpha"), 12u);
  EXPECT_EQ(h2.at("beta"), 12u);
}

// All proper removal subsets leave equal survivor counts, substitution never
// touches survivors, and set-at-once equals one-at-a-time in any order.
TEST(SubstituteRemoved, EqualCountsForAllSubsets) {
  std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> cycles{{kCycle24, kFourNodes}};
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto nodes = oracle::labels(n);
    cycles.emplace_back(build_cycle(nodes), nodes);
  }
  for (const auto& [cycle, nodes] : cycles) {
    const std::size_t n = nodes.size();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<NodeId> removed;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) removed.push_back(nodes[i]);
      }
      const auto out = substitute_removed(cycle, removed);
      const auto hist = count_symbols(out);
      ASSERT_EQ(hist.size(), n - removed.size());
      for (const auto& [node, count] : hist) EXPECT_EQ(count, cycle.size() / hist.size());
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (std::find(removed.begin(), removed.end(), cycle[i]) == removed.end()) {
          EXPECT_EQ(out[i], cycle[i]);
        }
      }
      auto order = removed;
      std::sort(order.begin(), order.end());
      do {
        auto seq = cycle;
        for (const auto& r : order) seq = substitute_removed(seq, std::vector<NodeId>{r});
        EXPECT_EQ(seq, out);
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
}

}  // namespace
}  // namespace permhash
