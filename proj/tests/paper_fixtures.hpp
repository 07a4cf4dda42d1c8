#pragma once

#include <vector>

#include "permhash/node_table.hpp"

namespace permhash::fixtures {

inline const std::vector<NodeId> kFourNodes{"alpha", "beta", "gamma", "delta"};

// The 24-symbol universal cycle for four nodes.
inline const std::vector<NodeId> kCycle24{
    "alpha", "beta",  "gamma", "alpha", "beta",  "delta", "alpha", "gamma",
    "beta",  "alpha", "gamma", "delta", "beta",  "alpha", "delta", "gamma",
    "beta",  "delta", "gamma", "alpha", "delta", "beta",  "gamma", "delta"};

// kCycle24 after removing gamma.
inline const std::vector<NodeId> kCycle24NoGamma{
    "alpha", "beta",  "alpha", "alpha", "beta",  "delta", "alpha", "beta",
    "beta",  "alpha", "delta", "delta", "beta",  "alpha", "delta", "beta",
    "beta",  "delta", "alpha", "alpha", "delta", "beta",  "delta", "delta"};

// ... and then delta.
inline const std::vector<NodeId> kCycle24NoGammaDelta{
    "alpha", "beta", "alpha", "alpha", "beta", "alpha", "alpha", "beta",
    "beta",  "alpha", "beta", "beta",  "beta", "alpha", "beta",  "beta",
    "beta",  "alpha", "alpha", "alpha", "beta", "beta", "alpha", "alpha"};

// Rows 0..5 of the three-node table (tree with branches counted from the end).
inline const std::vector<std::vector<NodeId>> kThreeNodeTable{
    {"alpha", "beta", "gamma"}, {"beta", "alpha", "gamma"}, {"alpha", "gamma", "beta"},
    {"beta", "gamma", "alpha"}, {"gamma", "alpha", "beta"}, {"gamma", "beta", "alpha"}};

}  // namespace permhash::fixtures
