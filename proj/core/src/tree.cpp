#include "recom/tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "recom/errors.hpp"

namespace recom {

namespace {

struct InducedEdge {
  std::int32_t a;  // member indices, a < b
  std::int32_t b;
  std::uint64_t weight;
};

// Union-find with path halving, for Kruskal below.
struct DisjointSets {
  explicit DisjointSets(std::int32_t n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
  std::vector<std::int32_t> parent;
};

struct PeelCut {
  std::int32_t child;    // member index; the cut is the edge above this node
  bool child_is_single;  // whether the subtree side becomes the peeled district
};

// Collects the node ids on the subtree side of a cut and the remainder side.
Bipartition split_at(const SpanningTree& tree, std::int32_t cut_child) {
  const auto m = static_cast<std::int32_t>(tree.members.size());
  std::vector<char> below(static_cast<std::size_t>(m), 0);
  below[static_cast<std::size_t>(cut_child)] = 1;
  // `order` lists parents before children, so one forward pass marks the
  // whole subtree under cut_child.
  for (const std::int32_t i : tree.order) {
    const std::int32_t p = tree.parent[static_cast<std::size_t>(i)];
    if (p >= 0 && below[static_cast<std::size_t>(p)] && i != cut_child)
      below[static_cast<std::size_t>(i)] = 1;
  }
  Bipartition parts;
  for (std::int32_t i = 0; i < m; ++i) {
    if (below[static_cast<std::size_t>(i)])
      parts.side_a.push_back(tree.members[static_cast<std::size_t>(i)]);
    else
      parts.side_b.push_back(tree.members[static_cast<std::size_t>(i)]);
  }
  return parts;  // members is ascending, so both sides already are
}

// Cuts that peel one window-sized district off a region that must still hold
// `remaining` districts afterwards. Either orientation of an edge can qualify.
std::vector<PeelCut> find_peel_cuts(const SpanningTree& tree, const BalanceWindow& single,
                                    const BalanceWindow& rest) {
  std::vector<PeelCut> cuts;
  const std::int64_t total = tree.subtree_pop[static_cast<std::size_t>(tree.root)];
  const auto m = static_cast<std::int32_t>(tree.members.size());
  for (std::int32_t i = 0; i < m; ++i) {
    if (tree.parent[static_cast<std::size_t>(i)] < 0) continue;
    const std::int64_t below = tree.subtree_pop[static_cast<std::size_t>(i)];
    const std::int64_t above = total - below;
    if (single.contains(below) && rest.contains(above)) cuts.push_back({i, true});
    if (single.contains(above) && rest.contains(below)) cuts.push_back({i, false});
  }
  return cuts;
}

}  // namespace

SpanningTree random_spanning_tree(const Graph& graph, std::span<const NodeId> members, Rng& rng) {
  SpanningTree tree;
  tree.members.assign(members.begin(), members.end());
  std::sort(tree.members.begin(), tree.members.end());
  const auto m = static_cast<std::int32_t>(tree.members.size());
  if (m == 0) fail(ErrorCode::disconnected_subset, "empty member set");

  // Member index lookup; -1 marks nodes outside the subset.
  std::vector<std::int32_t> local(static_cast<std::size_t>(graph.size()), -1);
  for (std::int32_t i = 0; i < m; ++i)
    local[static_cast<std::size_t>(tree.members[static_cast<std::size_t>(i)])] = i;

  // Induced edges in a deterministic order (ascending endpoints), each with an
  // independent uniform weight. Only the ordering of weights matters, so raw
  // 64-bit draws serve as weights; ties are broken by edge position.
  std::vector<InducedEdge> edges;
  for (std::int32_t i = 0; i < m; ++i) {
    const NodeId u = tree.members[static_cast<std::size_t>(i)];
    for (const NodeId v : graph.neighbors(u)) {
      if (v <= u) continue;
      const std::int32_t j = local[static_cast<std::size_t>(v)];
      if (j >= 0) edges.push_back({i, j, rng.next_u64()});
    }
  }
  std::vector<std::int32_t> by_weight(edges.size());
  std::iota(by_weight.begin(), by_weight.end(), 0);
  std::sort(by_weight.begin(), by_weight.end(), [&edges](std::int32_t x, std::int32_t y) {
    const auto& ex = edges[static_cast<std::size_t>(x)];
    const auto& ey = edges[static_cast<std::size_t>(y)];
    return ex.weight != ey.weight ? ex.weight < ey.weight : x < y;
  });

  std::vector<std::vector<std::int32_t>> tree_adjacency(static_cast<std::size_t>(m));
  DisjointSets sets(m);
  std::int32_t joined = 0;
  for (const std::int32_t e : by_weight) {
    const auto& edge = edges[static_cast<std::size_t>(e)];
    if (sets.unite(edge.a, edge.b)) {
      tree_adjacency[static_cast<std::size_t>(edge.a)].push_back(edge.b);
      tree_adjacency[static_cast<std::size_t>(edge.b)].push_back(edge.a);
      if (++joined == m - 1) break;
    }
  }
  if (joined != m - 1)
    fail(ErrorCode::disconnected_subset,
         "subset of " + std::to_string(m) + " nodes is not connected");

  tree.parent.assign(static_cast<std::size_t>(m), -1);
  tree.subtree_pop.assign(static_cast<std::size_t>(m), 0);
  tree.order.clear();
  tree.order.reserve(static_cast<std::size_t>(m));
  tree.root = 0;
  tree.order.push_back(tree.root);
  std::vector<char> visited(static_cast<std::size_t>(m), 0);
  visited[static_cast<std::size_t>(tree.root)] = 1;
  for (std::size_t head = 0; head < tree.order.size(); ++head) {
    const std::int32_t u = tree.order[head];
    for (const std::int32_t v : tree_adjacency[static_cast<std::size_t>(u)]) {
      if (!visited[static_cast<std::size_t>(v)]) {
        visited[static_cast<std::size_t>(v)] = 1;
        tree.parent[static_cast<std::size_t>(v)] = u;
        tree.order.push_back(v);
      }
    }
  }
  for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
    const std::int32_t i = *it;
    tree.subtree_pop[static_cast<std::size_t>(i)] +=
        graph.node(tree.members[static_cast<std::size_t>(i)]).population;
    const std::int32_t p = tree.parent[static_cast<std::size_t>(i)];
    if (p >= 0)
      tree.subtree_pop[static_cast<std::size_t>(p)] += tree.subtree_pop[static_cast<std::size_t>(i)];
  }
  return tree;
}

std::vector<std::int32_t> find_balanced_cuts(const SpanningTree& tree,
                                             const BalanceWindow& window) {
  std::vector<std::int32_t> cuts;
  const std::int64_t total = tree.subtree_pop[static_cast<std::size_t>(tree.root)];
  const auto m = static_cast<std::int32_t>(tree.members.size());
  for (std::int32_t i = 0; i < m; ++i) {
    if (tree.parent[static_cast<std::size_t>(i)] < 0) continue;
    const std::int64_t below = tree.subtree_pop[static_cast<std::size_t>(i)];
    if (window.contains(below) && window.contains(total - below)) cuts.push_back(i);
  }
  return cuts;
}

Bipartition bipartition(const Graph& graph, std::span<const NodeId> members,
                        const BalanceWindow& window, Rng& rng, int max_tree_attempts) {
  for (int attempt = 0; attempt < max_tree_attempts; ++attempt) {
    const SpanningTree tree = random_spanning_tree(graph, members, rng);
    const std::vector<std::int32_t> cuts = find_balanced_cuts(tree, window);
    if (cuts.empty()) continue;
    const std::int32_t cut = cuts[rng.below(cuts.size())];
    return split_at(tree, cut);
  }
  fail(ErrorCode::balance_unreachable,
       "no balanced cut in " + std::to_string(max_tree_attempts) + " spanning trees (target " +
           std::to_string(window.target) + ", epsilon " + std::to_string(window.epsilon) + ")");
}

Assignment recursive_seed(const Graph& graph, std::int32_t k, const BalanceWindow& window,
                          Rng& rng, int max_attempts) {
  if (k < 1) fail(ErrorCode::seed_failure, "district count must be at least 1");
  std::vector<DistrictId> labels(static_cast<std::size_t>(graph.size()), 0);
  if (k == 1) return Assignment(graph, std::move(labels), 1);

  for (int restart = 0; restart < max_attempts; ++restart) {
    std::vector<NodeId> remaining(static_cast<std::size_t>(graph.size()));
    std::iota(remaining.begin(), remaining.end(), 0);
    bool complete = true;
    for (DistrictId d = 0; d < k - 1 && complete; ++d) {
      const std::int32_t parts_left = k - d;  // districts still to carve out
      if (parts_left == 2) {
        try {
          Bipartition parts = bipartition(graph, remaining, window, rng, max_attempts);
          for (const NodeId u : parts.side_a) labels[static_cast<std::size_t>(u)] = d;
          for (const NodeId u : parts.side_b) labels[static_cast<std::size_t>(u)] = d + 1;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::balance_unreachable) throw;
          complete = false;
        }
        break;
      }
      const BalanceWindow rest = window.scaled(parts_left - 1);
      bool peeled = false;
      for (int attempt = 0; attempt < max_attempts && !peeled; ++attempt) {
        const SpanningTree tree = random_spanning_tree(graph, remaining, rng);
        const std::vector<PeelCut> cuts = find_peel_cuts(tree, window, rest);
        if (cuts.empty()) continue;
        const PeelCut cut = cuts[rng.below(cuts.size())];
        Bipartition parts = split_at(tree, cut.child);
        std::vector<NodeId>& peel = cut.child_is_single ? parts.side_a : parts.side_b;
        std::vector<NodeId>& rest_nodes = cut.child_is_single ? parts.side_b : parts.side_a;
        for (const NodeId u : peel) labels[static_cast<std::size_t>(u)] = d;
        remaining = std::move(rest_nodes);
        peeled = true;
      }
      if (!peeled) complete = false;
    }
    if (complete) return Assignment(graph, std::move(labels), k);
    labels.assign(static_cast<std::size_t>(graph.size()), 0);
  }
  fail(ErrorCode::seed_failure,
       "could not seed " + std::to_string(k) + " balanced districts in " +
           std::to_string(max_attempts) + " restarts (epsilon " +
           std::to_string(window.epsilon) + ")");
}

}  // namespace recom
