#pragma once

#include "remknap/core.hpp"

#include <cstdint>
#include <map>

namespace remknap {

// Exhaustive-search limits of the advice game solver.
inline constexpr std::size_t kMaxGameFamily = 8;
inline constexpr std::size_t kMaxGameItems = 8;
inline constexpr int kMaxGameBits = 3;

// Shared-prefix tree of an instance family. Instances sharing a prefix share
// the path; sizes are compared exactly, so generators must emit bit-identical
// shared prefixes.
struct PrefixTree {
    struct Node {
        int parent = -1;
        double item_size = 0.0; // edge label from the parent; unused at the root
        int depth = 0;          // number of items presented on the path
        std::vector<int> children;
        std::vector<int> ending;    // instance ids ending exactly here
        std::uint32_t through = 0;  // bitmask of instances whose path passes here
    };

    std::vector<Node> nodes; // nodes[0] is the root

    // Edge labels from the root to the node, in presentation order.
    std::vector<double> path_sizes(int node) const;
};

// Throws DuplicateInstance if two instances are identical.
PrefixTree build_prefix_tree(const std::vector<Instance>& family);

// The deterministic strategy of one advice group: the chosen packing mask for
// every reachable (node, packing) state and child edge.
struct GameStrategy {
    std::map<std::pair<int, std::uint32_t>, std::map<int, std::uint32_t>> moves;
};

struct GameResult {
    double value = 0.0;             // best guaranteed min of gain/opt
    std::vector<int> partition;     // block label per instance (restricted growth string)
    std::vector<std::uint32_t> blocks; // instance bitmask per block
    std::vector<GameStrategy> strategies; // per block, for the winning partition
    std::vector<double> claimed_gains;    // per instance, under the winning strategy
    std::vector<double> optima;           // per instance
};

// Value of the advice game: the maximum over partitions of the family into at
// most 2^bits groups of the minimum over groups of the group's maximin value.
// Group states are (prefix-tree node, exact packed subset); the strategy picks
// the feasible successor packing per child edge, the adversary the branch.
GameResult best_min_performance(const std::vector<Instance>& family, int bits,
                                ExecMode mode = ExecMode::parallel);

// The competitive-ratio lower bound implied by a game value.
double implied_ratio(double value);

// Text rendering of the winning partition and per-block strategy trees.
std::string render_game(const std::vector<Instance>& family, const GameResult& result);

} // namespace remknap
