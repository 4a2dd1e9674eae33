#include "support/fixtures.hpp"

#include <utility>

namespace recom::testing {

Graph path_graph(std::vector<std::int64_t> pops) {
  std::vector<NodeRecord> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < pops.size(); ++i) {
    NodeRecord record;
    record.population = pops[i];
    record.vap = pops[i];
    record.county = "county0";
    nodes.push_back(std::move(record));
    if (i > 0) edges.emplace_back(static_cast<NodeId>(i - 1), static_cast<NodeId>(i));
  }
  return build_graph(std::move(nodes), std::move(edges));
}

Graph star_graph(std::int64_t center_pop, std::vector<std::int64_t> leaf_pops) {
  std::vector<NodeRecord> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeRecord center;
  center.population = center_pop;
  center.vap = center_pop;
  center.county = "county0";
  nodes.push_back(std::move(center));
  for (std::size_t i = 0; i < leaf_pops.size(); ++i) {
    NodeRecord leaf;
    leaf.population = leaf_pops[i];
    leaf.vap = leaf_pops[i];
    leaf.county = "county0";
    nodes.push_back(std::move(leaf));
    edges.emplace_back(0, static_cast<NodeId>(i + 1));
  }
  return build_graph(std::move(nodes), std::move(edges));
}

Graph triangle_graph() {
  std::vector<NodeRecord> nodes(3);
  for (auto& node : nodes) {
    node.population = 1;
    node.vap = 1;
    node.county = "county0";
  }
  return build_graph(std::move(nodes), {{0, 1}, {0, 2}, {1, 2}});
}

LoadedGraph unit_grid(std::int32_t rows, std::int32_t cols) {
  GridOptions options;
  options.rows = rows;
  options.cols = cols;
  return make_grid(options);
}

LoadedGraph city_grid(std::int32_t rows, std::int32_t cols, double radius, double city_dem,
                      double statewide_share) {
  GridOptions options;
  options.rows = rows;
  options.cols = cols;
  options.pattern = "city";
  options.city_radius = radius;
  options.city_dem = city_dem;
  options.statewide_share = statewide_share;
  return make_grid(options);
}

}  // namespace recom::testing
