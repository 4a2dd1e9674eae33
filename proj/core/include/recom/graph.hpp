#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recom/votes.hpp"

namespace recom {

using NodeId = std::int32_t;
using DistrictId = std::int32_t;

struct VotePair {
  Vote dem;
  Vote rep;
  friend bool operator==(const VotePair&, const VotePair&) = default;
};

struct NodeRecord {
  std::int64_t population = 0;
  std::int64_t vap = 0;  // voting-age population, the preferred proration weight
  std::string county;
  std::vector<VotePair> votes;  // parallel to Graph::contest_names()

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

// Adjacency graph of geographic units (precincts or blocks). Immutable after
// construction through build_graph, which validates every structural
// invariant; a built Graph is safe to share across threads without locking.
class Graph {
 public:
  std::int32_t size() const { return static_cast<std::int32_t>(nodes_.size()); }
  const NodeRecord& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const std::vector<NodeRecord>& nodes() const { return nodes_; }

  // Undirected edges, canonical form u < v, sorted lexicographically.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId id) const {
    return {adjacency_.data() + adjacency_offsets_[static_cast<std::size_t>(id)],
            adjacency_.data() + adjacency_offsets_[static_cast<std::size_t>(id) + 1]};
  }

  std::int64_t total_population() const { return total_population_; }

  const std::vector<std::string>& contest_names() const { return contest_names_; }
  // Index of a contest in contest_names(); throws UnknownContest otherwise.
  std::int32_t contest_index(std::string_view name) const;

  // External string keys for nodes, in dense-id order. Defaults to decimal ids.
  const std::vector<std::string>& node_keys() const { return node_keys_; }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  friend Graph build_graph(std::vector<NodeRecord> nodes,
                           std::vector<std::pair<NodeId, NodeId>> edges,
                           std::vector<std::string> contest_names,
                           std::vector<std::string> node_keys);

  std::vector<NodeRecord> nodes_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::string> contest_names_;
  std::vector<std::string> node_keys_;
  std::vector<std::int32_t> adjacency_offsets_;
  std::vector<NodeId> adjacency_;
  std::int64_t total_population_ = 0;
};

// Validates and assembles a Graph. Throws DuplicateEdge on self-loops or
// repeated edges, NegativeAttribute on negative populations/vap/votes or a
// nonpositive total population, ParseError on out-of-range endpoints or
// malformed parallel arrays, DisconnectedGraph if the graph is not connected.
Graph build_graph(std::vector<NodeRecord> nodes, std::vector<std::pair<NodeId, NodeId>> edges,
                  std::vector<std::string> contest_names = {},
                  std::vector<std::string> node_keys = {});

// A districting plan over a Graph: every node carries a district id in
// [0, k), every district is nonempty, and per-district population totals are
// cached exactly. Mutable, single-owner; mutation keeps the cache in sync.
class Assignment {
 public:
  Assignment(const Graph& graph, std::vector<DistrictId> district_of, std::int32_t k);

  std::int32_t k() const { return k_; }
  DistrictId district_of(NodeId id) const { return district_of_[static_cast<std::size_t>(id)]; }
  std::span<const DistrictId> labels() const { return district_of_; }
  std::int64_t district_pop(DistrictId d) const;
  const std::vector<std::int64_t>& district_pops() const { return district_pops_; }

  // Reassigns the union of two districts in one shot: side_a to district a,
  // side_b to district b. The two sides must exactly cover the nodes currently
  // in districts a and b. Updates the population cache incrementally.
  void apply_split(const Graph& graph, std::span<const NodeId> side_a, DistrictId a,
                   std::span<const NodeId> side_b, DistrictId b);

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<DistrictId> district_of_;
  std::vector<std::int64_t> district_pops_;
  std::int32_t k_ = 0;
};

// True iff the district induces a connected subgraph (BFS). Throws
// UnknownDistrict for ids outside [0, k).
bool contiguous(const Graph& graph, const Assignment& assignment, DistrictId district);

// Sum of member node populations, recomputed from scratch and checked against
// the Assignment's cache. Throws UnknownDistrict for ids outside [0, k).
std::int64_t district_population(const Graph& graph, const Assignment& assignment,
                                 DistrictId district);

// All district pairs (a, b) with a < b joined by at least one graph edge,
// sorted. This is the proposal menu for a recombination step.
std::vector<std::pair<DistrictId, DistrictId>> adjacent_district_pairs(const Graph& graph,
                                                                       const Assignment& assignment);

// Full plan validation: contiguity of every district plus the cache check.
// Throws on the first violation. Intended for io boundaries and tests; the
// chain maintains these invariants inductively.
void validate_assignment(const Graph& graph, const Assignment& assignment);

// Induced subgraph over a node subset (sorted ascending internally), with the
// mapping back to parent ids. Contest columns and county labels carry over;
// node keys are inherited from the parent graph. Throws DisconnectedGraph if
// the subset does not induce a connected graph.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_parent;  // subgraph id -> parent graph id
};
Subgraph induced_subgraph(const Graph& graph, std::span<const NodeId> members);

}  // namespace recom
