#pragma once

#include <cstdint>
#include <string>

#include "recom/graph_io.hpp"

namespace recom {

// Synthetic rectangular-grid fixtures. Nodes are rows x cols cells with
// 4-neighbor adjacency, keyed "r<row>c<col>", one county per row band unless
// county_bands says otherwise.
struct GridOptions {
  std::int32_t rows = 0;
  std::int32_t cols = 0;
  std::int64_t population = 1;       // per node
  std::int64_t vap = 1;              // per node
  std::int32_t county_bands = 2;     // counties split the rows into this many bands

  // Vote pattern. "none" emits no contests. "flat" gives every node the same
  // two-party split (dem_share of `turnout`). "city" plants a disk of
  // city_dem-leaning nodes at the grid center and calibrates the remaining
  // nodes so the statewide Democratic share is exactly statewide_share; both
  // shares become exact per-node vote fractions of `turnout`.
  std::string pattern = "none";
  std::string contest = "VOTE";
  std::int64_t turnout = 1000;       // two-party votes per node
  double dem_share = 0.5;            // flat pattern
  double city_radius = 0.0;          // city pattern, in cell units; 0 picks min(rows, cols) / 4
  double city_dem = 0.7;
  double statewide_share = 0.5;
};

LoadedGraph make_grid(const GridOptions& options);

}  // namespace recom
