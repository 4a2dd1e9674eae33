#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "recom/graph.hpp"
#include "recom/rng.hpp"

namespace recom {

// Population-balance window: a district is acceptable when its population
// lies in [target * (1 - epsilon), target * (1 + epsilon)], inclusive.
struct BalanceWindow {
  double target = 0.0;   // ideal district population, possibly fractional
  double epsilon = 0.0;  // fractional tolerance, >= 0

  double lo() const { return target * (1.0 - epsilon); }
  double hi() const { return target * (1.0 + epsilon); }
  bool contains(std::int64_t pop) const {
    const double p = static_cast<double>(pop);
    return p >= lo() && p <= hi();
  }
  // Window for a region that must hold `parts` balanced districts.
  BalanceWindow scaled(std::int32_t parts) const {
    return BalanceWindow{target * static_cast<double>(parts), epsilon};
  }
};

// Rooted spanning tree over a node subset. parent/subtree_pop/order are
// indexed by position in `members`; parent holds -1 at the root. `order` is a
// traversal with parents before children, so reading it backwards visits every
// subtree bottom-up.
struct SpanningTree {
  std::vector<NodeId> members;            // ascending node ids
  std::vector<std::int32_t> parent;       // member index of parent, -1 at root
  std::vector<std::int64_t> subtree_pop;  // population of the subtree at each member
  std::vector<std::int32_t> order;        // member indices, parents first
  std::int32_t root = 0;
};

// Draws a spanning tree of the subgraph induced by `members`: every induced
// edge gets an independent uniform random weight and the minimum-weight
// spanning tree is kept. Throws DisconnectedSubset if the subset is not
// connected. Two calls with RNGs in the same state yield the same tree.
SpanningTree random_spanning_tree(const Graph& graph, std::span<const NodeId> members, Rng& rng);

// Every tree edge whose removal leaves both components inside the window,
// identified by the member index of the child endpoint, ascending. An empty
// result just means this tree admits no balanced cut.
std::vector<std::int32_t> find_balanced_cuts(const SpanningTree& tree, const BalanceWindow& window);

struct Bipartition {
  std::vector<NodeId> side_a;  // ascending; the cut subtree
  std::vector<NodeId> side_b;  // ascending; the remainder
};

// Splits `members` into two contiguous sides, each inside the window: draws
// spanning trees until one admits a balanced cut (up to max_tree_attempts,
// then BalanceUnreachable) and cuts a uniformly chosen balanced edge of that
// tree. Throws DisconnectedSubset if the subset is not connected.
Bipartition bipartition(const Graph& graph, std::span<const NodeId> members,
                        const BalanceWindow& window, Rng& rng, int max_tree_attempts);

// Builds a full k-district plan by peeling one balanced district at a time
// from the remaining region. Every peeled district must land inside `window`
// and the remainder inside the (m-1)-scaled window, which guarantees all k
// final districts satisfy the global window. Each split may redraw up to
// max_attempts trees, and the whole construction restarts up to max_attempts
// times before SeedFailure. window.target should equal total / k.
Assignment recursive_seed(const Graph& graph, std::int32_t k, const BalanceWindow& window,
                          Rng& rng, int max_attempts);

}  // namespace recom
