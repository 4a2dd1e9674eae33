#include "recom/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "recom/errors.hpp"

namespace recom {

namespace {

std::string node_name(const std::vector<std::string>& keys, NodeId id) {
  const auto i = static_cast<std::size_t>(id);
  return i < keys.size() ? keys[i] : std::to_string(id);
}

}  // namespace

std::int32_t Graph::contest_index(std::string_view name) const {
  for (std::size_t i = 0; i < contest_names_.size(); ++i)
    if (contest_names_[i] == name) return static_cast<std::int32_t>(i);
  fail(ErrorCode::unknown_contest, "no contest named '" + std::string(name) + "'");
}

bool operator==(const Graph& a, const Graph& b) {
  return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.contest_names_ == b.contest_names_ &&
         a.node_keys_ == b.node_keys_;
}

Graph build_graph(std::vector<NodeRecord> nodes, std::vector<std::pair<NodeId, NodeId>> edges,
                  std::vector<std::string> contest_names, std::vector<std::string> node_keys) {
  const auto n = static_cast<std::int32_t>(nodes.size());
  if (n == 0) fail(ErrorCode::parse_error, "graph has no nodes");
  if (!node_keys.empty() && node_keys.size() != nodes.size())
    fail(ErrorCode::parse_error, "node_keys length does not match node count");
  if (node_keys.empty()) {
    node_keys.reserve(nodes.size());
    for (std::int32_t i = 0; i < n; ++i) node_keys.push_back(std::to_string(i));
  }

  std::int64_t total_pop = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    const NodeRecord& r = nodes[static_cast<std::size_t>(i)];
    if (r.population < 0)
      fail(ErrorCode::negative_attribute,
           "node " + node_name(node_keys, i) + " has negative population");
    if (r.vap < 0)
      fail(ErrorCode::negative_attribute, "node " + node_name(node_keys, i) + " has negative vap");
    for (const VotePair& v : r.votes)
      if (v.dem.negative() || v.rep.negative())
        fail(ErrorCode::negative_attribute,
             "node " + node_name(node_keys, i) + " has a negative vote count");
    if (r.votes.size() != contest_names.size())
      fail(ErrorCode::parse_error, "node " + node_name(node_keys, i) +
                                       " carries " + std::to_string(r.votes.size()) +
                                       " contests, expected " +
                                       std::to_string(contest_names.size()));
    total_pop += r.population;
  }
  if (total_pop <= 0) fail(ErrorCode::negative_attribute, "total population must be positive");

  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(ErrorCode::parse_error, "edge endpoint out of range");
    if (u == v)
      fail(ErrorCode::duplicate_edge, "self-loop at node " + node_name(node_keys, u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  const auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    fail(ErrorCode::duplicate_edge, "duplicate edge " + node_name(node_keys, dup->first) + " -- " +
                                        node_name(node_keys, dup->second));

  Graph g;
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  g.contest_names_ = std::move(contest_names);
  g.node_keys_ = std::move(node_keys);
  g.total_population_ = total_pop;

  // CSR adjacency with neighbor lists sorted ascending, so traversal order is
  // deterministic everywhere downstream.
  std::vector<std::int32_t> degree(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : g.edges_) {
    ++degree[static_cast<std::size_t>(u) + 1];
    ++degree[static_cast<std::size_t>(v) + 1];
  }
  for (std::size_t i = 1; i < degree.size(); ++i) degree[i] += degree[i - 1];
  g.adjacency_offsets_ = degree;
  g.adjacency_.resize(static_cast<std::size_t>(g.adjacency_offsets_.back()));
  std::vector<std::int32_t> cursor(g.adjacency_offsets_.begin(), g.adjacency_offsets_.end() - 1);
  for (const auto& [u, v] : g.edges_) {
    g.adjacency_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
    g.adjacency_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
  }
  for (std::int32_t i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    if (!std::is_sorted(nb.begin(), nb.end()))
      std::sort(g.adjacency_.begin() + g.adjacency_offsets_[static_cast<std::size_t>(i)],
                g.adjacency_.begin() + g.adjacency_offsets_[static_cast<std::size_t>(i) + 1]);
  }

  // Connectivity: BFS from node 0 must reach everything.
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<NodeId> queue;
  queue.push(0);
  seen[0] = 1;
  std::int32_t reached = 1;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop();
    for (const NodeId v : g.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        queue.push(v);
      }
    }
  }
  if (reached != n) {
    const auto stranded = static_cast<NodeId>(
        std::find(seen.begin(), seen.end(), 0) - seen.begin());
    fail(ErrorCode::disconnected_graph,
         "node " + node_name(g.node_keys_, stranded) + " unreachable from node " +
             node_name(g.node_keys_, 0) + " (" + std::to_string(n - reached) + " of " +
             std::to_string(n) + " nodes stranded)");
  }
  return g;
}

Assignment::Assignment(const Graph& graph, std::vector<DistrictId> district_of, std::int32_t k)
    : district_of_(std::move(district_of)), k_(k) {
  if (k_ < 1) fail(ErrorCode::unknown_district, "district count must be at least 1");
  if (district_of_.size() != static_cast<std::size_t>(graph.size()))
    fail(ErrorCode::parse_error, "assignment length does not match graph size");
  district_pops_.assign(static_cast<std::size_t>(k_), 0);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k_), 0);
  for (NodeId i = 0; i < graph.size(); ++i) {
    const DistrictId d = district_of_[static_cast<std::size_t>(i)];
    if (d < 0 || d >= k_)
      fail(ErrorCode::unknown_district,
           "node " + std::to_string(i) + " assigned to district " + std::to_string(d) +
               " outside [0, " + std::to_string(k_) + ")");
    district_pops_[static_cast<std::size_t>(d)] += graph.node(i).population;
    ++counts[static_cast<std::size_t>(d)];
  }
  for (DistrictId d = 0; d < k_; ++d)
    if (counts[static_cast<std::size_t>(d)] == 0)
      fail(ErrorCode::unknown_district, "district " + std::to_string(d) + " is empty");
}

std::int64_t Assignment::district_pop(DistrictId d) const {
  if (d < 0 || d >= k_)
    fail(ErrorCode::unknown_district, "district " + std::to_string(d) + " outside [0, " +
                                          std::to_string(k_) + ")");
  return district_pops_[static_cast<std::size_t>(d)];
}

void Assignment::apply_split(const Graph& graph, std::span<const NodeId> side_a, DistrictId a,
                             std::span<const NodeId> side_b, DistrictId b) {
  if (a == b || a < 0 || a >= k_ || b < 0 || b >= k_)
    fail(ErrorCode::unknown_district, "apply_split needs two distinct districts in [0, k)");
  if (side_a.empty() || side_b.empty())
    fail(ErrorCode::unknown_district, "apply_split would leave a district empty");
  std::int64_t pop_a = 0;
  std::int64_t pop_b = 0;
  for (const NodeId u : side_a) {
    const DistrictId d = district_of_[static_cast<std::size_t>(u)];
    if (d != a && d != b)
      fail(ErrorCode::unknown_district,
           "apply_split touches node " + std::to_string(u) + " outside the merged pair");
    district_of_[static_cast<std::size_t>(u)] = a;
    pop_a += graph.node(u).population;
  }
  for (const NodeId u : side_b) {
    const DistrictId d = district_of_[static_cast<std::size_t>(u)];
    if (d != a && d != b)
      fail(ErrorCode::unknown_district,
           "apply_split touches node " + std::to_string(u) + " outside the merged pair");
    district_of_[static_cast<std::size_t>(u)] = b;
    pop_b += graph.node(u).population;
  }
  district_pops_[static_cast<std::size_t>(a)] = pop_a;
  district_pops_[static_cast<std::size_t>(b)] = pop_b;
}

bool contiguous(const Graph& graph, const Assignment& assignment, DistrictId district) {
  if (district < 0 || district >= assignment.k())
    fail(ErrorCode::unknown_district, "district " + std::to_string(district) + " outside [0, " +
                                          std::to_string(assignment.k()) + ")");
  NodeId start = -1;
  std::int32_t members = 0;
  for (NodeId i = 0; i < graph.size(); ++i) {
    if (assignment.district_of(i) == district) {
      if (start < 0) start = i;
      ++members;
    }
  }
  if (members == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(graph.size()), 0);
  std::queue<NodeId> queue;
  queue.push(start);
  seen[static_cast<std::size_t>(start)] = 1;
  std::int32_t reached = 1;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop();
    for (const NodeId v : graph.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(v)] && assignment.district_of(v) == district) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        queue.push(v);
      }
    }
  }
  return reached == members;
}

std::int64_t district_population(const Graph& graph, const Assignment& assignment,
                                 DistrictId district) {
  if (district < 0 || district >= assignment.k())
    fail(ErrorCode::unknown_district, "district " + std::to_string(district) + " outside [0, " +
                                          std::to_string(assignment.k()) + ")");
  std::int64_t total = 0;
  for (NodeId i = 0; i < graph.size(); ++i)
    if (assignment.district_of(i) == district) total += graph.node(i).population;
  if (total != assignment.district_pop(district))
    fail(ErrorCode::unknown_district,
         "population cache out of sync for district " + std::to_string(district));
  return total;
}

std::vector<std::pair<DistrictId, DistrictId>> adjacent_district_pairs(
    const Graph& graph, const Assignment& assignment) {
  std::vector<std::pair<DistrictId, DistrictId>> pairs;
  for (const auto& [u, v] : graph.edges()) {
    DistrictId a = assignment.district_of(u);
    DistrictId b = assignment.district_of(v);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    pairs.emplace_back(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

void validate_assignment(const Graph& graph, const Assignment& assignment) {
  for (DistrictId d = 0; d < assignment.k(); ++d) {
    district_population(graph, assignment, d);  // cache check, throws if stale
    if (!contiguous(graph, assignment, d))
      fail(ErrorCode::disconnected_graph, "district " + std::to_string(d) + " is not contiguous");
  }
}

Subgraph induced_subgraph(const Graph& graph, std::span<const NodeId> members) {
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::int32_t> local(static_cast<std::size_t>(graph.size()), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i)
    local[static_cast<std::size_t>(sorted[i])] = static_cast<std::int32_t>(i);

  std::vector<NodeRecord> nodes;
  std::vector<std::string> keys;
  nodes.reserve(sorted.size());
  keys.reserve(sorted.size());
  for (const NodeId u : sorted) {
    nodes.push_back(graph.node(u));
    keys.push_back(graph.node_keys()[static_cast<std::size_t>(u)]);
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [u, v] : graph.edges()) {
    const std::int32_t lu = local[static_cast<std::size_t>(u)];
    const std::int32_t lv = local[static_cast<std::size_t>(v)];
    if (lu >= 0 && lv >= 0) edges.emplace_back(lu, lv);
  }
  return Subgraph{build_graph(std::move(nodes), std::move(edges), graph.contest_names(),
                              std::move(keys)),
                  std::move(sorted)};
}

}  // namespace recom
