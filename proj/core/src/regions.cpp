#include "recom/regions.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "recom/errors.hpp"

namespace recom {

std::vector<NodeId> region_members(const Graph& graph, const RegionSpec& region) {
  std::vector<NodeId> members;
  for (NodeId i = 0; i < graph.size(); ++i)
    if (region.counties.count(graph.node(i).county)) members.push_back(i);
  return members;
}

SplitReport validate_split(const Graph& graph, const RegionSpec& region_a,
                           const RegionSpec& region_b, double ratio_target) {
  for (const std::string& county : region_a.counties)
    if (region_b.counties.count(county))
      fail(ErrorCode::county_overlap,
           "county '" + county + "' listed in both '" + region_a.name + "' and '" +
               region_b.name + "'");
  for (NodeId i = 0; i < graph.size(); ++i) {
    const std::string& county = graph.node(i).county;
    if (!region_a.counties.count(county) && !region_b.counties.count(county))
      fail(ErrorCode::uncovered_county, "county '" + county + "' belongs to neither region");
  }

  SplitReport report;
  report.ratio_target = ratio_target;
  for (const RegionSpec* region : {&region_a, &region_b}) {
    const std::vector<NodeId> members = region_members(graph, *region);
    if (members.empty())
      fail(ErrorCode::region_disconnected, "region '" + region->name + "' has no nodes");
    try {
      induced_subgraph(graph, members);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::disconnected_graph) throw;
      fail(ErrorCode::region_disconnected, "region '" + region->name + "' is not contiguous");
    }
    std::int64_t pop = 0;
    for (const NodeId u : members) pop += graph.node(u).population;
    (region == &region_a ? report.pop_a : report.pop_b) = pop;
  }
  report.deviation_persons = std::abs(
      static_cast<double>(report.pop_a) -
      ratio_target * static_cast<double>(report.pop_a + report.pop_b));
  return report;
}

std::vector<VoteTableRow> region_vote_table(const Graph& graph, const RegionSpec& region_a,
                                            const RegionSpec& region_b,
                                            std::span<const std::string> contests) {
  struct Totals {
    VoteSum dem;
    VoteSum all;
  };
  std::vector<VoteTableRow> rows;
  for (const std::string& contest : contests) {
    const auto c = static_cast<std::size_t>(graph.contest_index(contest));
    Totals a, b, full;
    for (NodeId i = 0; i < graph.size(); ++i) {
      const VotePair& v = graph.node(i).votes[c];
      Totals* region = nullptr;
      if (region_a.counties.count(graph.node(i).county))
        region = &a;
      else if (region_b.counties.count(graph.node(i).county))
        region = &b;
      if (region) {
        region->dem.add(v.dem);
        region->all.add(v.dem);
        region->all.add(v.rep);
      }
      full.dem.add(v.dem);
      full.all.add(v.dem);
      full.all.add(v.rep);
    }
    const auto share = [](const Totals& t) -> std::optional<double> {
      if (t.all.empty()) return std::nullopt;
      return (t.dem.exact() / t.all.exact()).convert_to<double>();
    };
    rows.push_back({contest, share(a), share(b), share(full)});
  }
  return rows;
}

RegionEnsembles run_region_ensembles(const Graph& graph, const RegionSpec& region_a,
                                     const RegionSpec& region_b, std::int32_t k_full,
                                     const ChainParams& params,
                                     std::span<const std::string> contests, TiePolicy policy) {
  const double ratio = static_cast<double>(region_a.k_region) /
                       static_cast<double>(region_a.k_region + region_b.k_region);
  SplitReport report = validate_split(graph, region_a, region_b, ratio);

  Subgraph sub_a = induced_subgraph(graph, region_members(graph, region_a));
  Subgraph sub_b = induced_subgraph(graph, region_members(graph, region_b));

  const auto launch = [&](const Graph& g, std::int32_t k, std::uint64_t salt) {
    ChainParams p = params;
    p.k = k;
    p.rng_seed = derive_seed(params.rng_seed, salt);
    return std::async(std::launch::async,
                      [&g, p, contests, policy] { return run_chain(g, p, contests, policy); });
  };
  auto fut_a = launch(sub_a.graph, region_a.k_region, 0);
  auto fut_b = launch(sub_b.graph, region_b.k_region, 1);
  auto fut_full = launch(graph, k_full, 2);
  RegionEnsembles result{report, fut_a.get(), fut_b.get(), fut_full.get(), {}, {}, {}, {}};

  for (std::size_t c = 0; c < contests.size(); ++c) {
    result.hist_a.push_back(
        seat_histogram(result.run_a.seats_half[c], region_a.k_region, contests[c]));
    result.hist_b.push_back(
        seat_histogram(result.run_b.seats_half[c], region_b.k_region, contests[c]));
    result.hist_full.push_back(seat_histogram(result.run_full.seats_half[c], k_full, contests[c]));
    result.hist_pairs.push_back(pair_convolution(result.hist_a[c], result.hist_b[c]));
  }
  return result;
}

}  // namespace recom
