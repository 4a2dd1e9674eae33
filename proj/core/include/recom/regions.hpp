#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "recom/chain.hpp"
#include "recom/graph.hpp"
#include "recom/stats.hpp"

namespace recom {

// A named bloc of counties that will be districted independently.
struct RegionSpec {
  std::string name;
  std::set<std::string> counties;
  std::int32_t k_region = 1;
};

// How a two-region split divides the state's population against the split
// implied by the district counts (e.g. 6:12 districts should put one third of
// the population in the first region).
struct SplitReport {
  std::int64_t pop_a = 0;
  std::int64_t pop_b = 0;
  double ratio_target = 0.0;        // intended population share of region a
  double deviation_persons = 0.0;   // |pop_a - ratio_target * total|
};

// Checks that two county blocs partition the graph's counties (CountyOverlap /
// UncoveredCounty otherwise) and that each bloc induces a connected subgraph
// (RegionDisconnected), then reports how far the actual populations sit from
// the target ratio. The county lists are input data; nothing is searched for.
SplitReport validate_split(const Graph& graph, const RegionSpec& region_a,
                           const RegionSpec& region_b, double ratio_target);

// Per-contest two-party vote shares within each region and statewide. A cell
// is empty when the region records no two-party votes for that contest.
struct VoteTableRow {
  std::string contest;
  std::optional<double> share_a;
  std::optional<double> share_b;
  std::optional<double> share_full;
};

std::vector<VoteTableRow> region_vote_table(const Graph& graph, const RegionSpec& region_a,
                                            const RegionSpec& region_b,
                                            std::span<const std::string> contests);

// Three independent ensembles (region a alone, region b alone, whole state)
// plus the per-contest distribution over all cross-region plan pairs, computed
// by convolution. Region chains run against region-local ideal populations
// (region_pop / k_region). Seeds derive from params.rng_seed with salts 0 (a),
// 1 (b), 2 (full); the three chains run concurrently.
struct RegionEnsembles {
  SplitReport report;
  EnsembleRun run_a;
  EnsembleRun run_b;
  EnsembleRun run_full;
  std::vector<SeatHistogram> hist_a;      // per contest, k = k_a
  std::vector<SeatHistogram> hist_b;      // per contest, k = k_b
  std::vector<SeatHistogram> hist_full;   // per contest, k = k_full
  std::vector<SeatHistogram> hist_pairs;  // per contest, k = k_a + k_b
};

RegionEnsembles run_region_ensembles(const Graph& graph, const RegionSpec& region_a,
                                     const RegionSpec& region_b, std::int32_t k_full,
                                     const ChainParams& params,
                                     std::span<const std::string> contests,
                                     TiePolicy policy = TiePolicy::count_rep);

// Nodes whose county belongs to the region, ascending.
std::vector<NodeId> region_members(const Graph& graph, const RegionSpec& region);

}  // namespace recom
