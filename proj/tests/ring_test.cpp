#include "permhash/ring.hpp"

#include <gtest/gtest.h>

#include <random>

#include "permhash/errors.hpp"

namespace permhash {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

RingState ring_of(std::vector<NodeId> nodes, std::size_t k = 1, unsigned bits = 32) {
  RingState ring(RingConfig{bits, k});
  for (const auto& n : nodes) ring = ring.add(n);
  return ring;
}

// Golden values from Python hashlib.
TEST(RingPoint, GoldenVectors) {
  EXPECT_EQ(ring_point("alpha", 0, 0, 32), 1337726517u);
  EXPECT_EQ(ring_point("beta", 0, 0, 32), 109433814u);
  EXPECT_EQ(ring_point("alpha", 0, 0, 64), 5745491643904454371ULL);
  EXPECT_EQ(ring_point("alpha", 0, 0, 64) >> 32, 1337726517u);
}

TEST(Ring, AddPlacesKPoints) {
  const RingState ring = ring_of({"alpha"}, 3);
  EXPECT_EQ(ring.points().size(), 3u);
  for (const auto& [p, owner] : ring.points()) EXPECT_EQ(owner, "alpha");
  EXPECT_EQ(ring.log().size(), 1u);
  EXPECT_EQ(code_of([&] { ring.add("alpha"); }), ErrorCode::kDuplicateNode);
}

TEST(Ring, TwoNodeGoldenLookups) {
  const RingState ring = ring_of({"alpha", "beta"});
  ASSERT_EQ(ring.points().size(), 2u);
  EXPECT_EQ(ring.points().at(1337726517u), "alpha");
  EXPECT_EQ(ring.points().at(109433814u), "beta");
  EXPECT_EQ(ring.lookup(derive_key("k1", 512)), "beta");   // 4049034963, wraps
  EXPECT_EQ(ring.lookup(derive_key("k2", 512)), "alpha");  // 1082173830
  EXPECT_EQ(ring.lookup(derive_key("k3", 512)), "beta");   // 2887064460, wraps
  EXPECT_EQ(ring.lookup(derive_key("hello", 512)), "beta");
  // Boundary: a key point equal to a node point belongs to that node.
  EXPECT_EQ(ring.lookup(HashKey(BigUint(1337726517u), 32)), "alpha");
  EXPECT_EQ(ring.lookup(HashKey(BigUint(1337726518u), 32)), "beta");
  EXPECT_EQ(ring.lookup(HashKey(BigUint(109433814u), 32)), "beta");
  EXPECT_EQ(ring.lookup(HashKey(BigUint(109433815u), 32)), "alpha");
  EXPECT_EQ(ring.lookup(HashKey(BigUint(0), 32)), "beta");
}

TEST(Ring, SingleNodeOwnsEverything) {
  const RingState ring = ring_of({"solo"}, 4);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(ring.lookup(HashKey(BigUint(rng()), 64)), "solo");
  }
}

TEST(Ring, RemoveRestoresPoints) {
  const RingState alpha = ring_of({"alpha"}, 3);
  EXPECT_TRUE(alpha.remove("alpha").points().empty());
  const RingState both = alpha.add("beta");
  EXPECT_EQ(both.remove("beta").points(), alpha.points());
  EXPECT_EQ(code_of([&] { alpha.remove("zeta"); }), ErrorCode::kNodeNotFound);
  EXPECT_EQ(code_of([&] { RingState(RingConfig{}).lookup(HashKey::from_u64(1)); }),
            ErrorCode::kEmptyRing);
  EXPECT_EQ(code_of([&] { RingState(RingConfig{}).segments(); }), ErrorCode::kEmptyRing);
}

TEST(Ring, ReplayIsDeterministic) {
  RingState ring(RingConfig{32, 5});
  for (int i = 0; i < 30; ++i) ring = ring.add("node-" + std::to_string(i));
  for (int i = 0; i < 30; i += 3) ring = ring.remove("node-" + std::to_string(i));
  ring = ring.add("node-0");
  const RingState again = RingState::replay(ring.config(), ring.log());
  EXPECT_EQ(again, ring);
  EXPECT_EQ(deserialize_ring(serialize_ring(ring)), ring);
  EXPECT_EQ(ring.points().size(), 21u * 5u);
}

TEST(Ring, SegmentLengths) {
  const RingState one = ring_of({"alpha"});
  ASSERT_EQ(one.segment_lengths().size(), 1u);
  EXPECT_TRUE(one.segment_lengths()[0] == (ArcLength{1} << 32));
  const RingState one64 = ring_of({"alpha"}, 1, 64);
  EXPECT_TRUE(one64.segment_lengths()[0] == (ArcLength{1} << 64));

  const RingState two = ring_of({"alpha", "beta"});
  const auto lengths = two.segment_lengths();
  ASSERT_EQ(lengths.size(), 2u);
  const std::uint64_t p1 = 109433814u, p2 = 1337726517u;
  EXPECT_TRUE(lengths[0] == (ArcLength{1} << 32) - (p2 - p1));
  EXPECT_TRUE(lengths[1] == p2 - p1);

  for (unsigned bits : {32u, 64u}) {
    RingState r(RingConfig{bits, 7});
    for (int i = 0; i < 25; ++i) r = r.add("n" + std::to_string(i));
    ArcLength total = 0;
    for (ArcLength l : r.segment_lengths()) total += l;
    EXPECT_TRUE(total == r.config().perimeter());
  }
}

TEST(Ring, ConfigValidation) {
  EXPECT_EQ(code_of([] { RingState(RingConfig{16, 1}); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { RingState(RingConfig{32, 0}); }), ErrorCode::kInvalidConfig);
}

TEST(RingSerialization, Schema) {
  const RingState ring = ring_of({"alpha", "beta"}, 3).remove("alpha");
  EXPECT_EQ(serialize_ring(ring),
            R"({"version":1,"point_bits":32,"replicas_k":3,"log":[["alpha","add"],["beta","add"],["alpha","remove"]]})");
  EXPECT_EQ(code_of([] { deserialize_ring(R"({"version":1,"point_bits":32,"replicas_k":1,"log":[["a","move"]]})"); }),
            ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { deserialize_ring(R"({"version":1,"point_bits":32,"replicas_k":1,"log":[["a","remove"]]})"); }),
            ErrorCode::kNodeNotFound);
  EXPECT_EQ(code_of([] { deserialize_ring("{"); }), ErrorCode::kParseError);
}

}  // namespace
}  // namespace permhash
