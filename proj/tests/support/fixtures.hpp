#pragma once

#include <cstdint>
#include <vector>

#include "recom/graph.hpp"
#include "recom/synth.hpp"

namespace recom::testing {

// 0 - 1 - 2 - ... with the given populations.
Graph path_graph(std::vector<std::int64_t> pops);

// Node 0 at the hub, one spoke per leaf population.
Graph star_graph(std::int64_t center_pop, std::vector<std::int64_t> leaf_pops);

// Three mutually adjacent unit-population nodes.
Graph triangle_graph();

// rows x cols grid, unit population, no contests.
LoadedGraph unit_grid(std::int32_t rows, std::int32_t cols);

// rows x cols grid with a centered city disk, calibrated to the given exact
// statewide Democratic share.
LoadedGraph city_grid(std::int32_t rows, std::int32_t cols, double radius, double city_dem,
                      double statewide_share);

}  // namespace recom::testing
