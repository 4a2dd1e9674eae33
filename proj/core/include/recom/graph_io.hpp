#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "recom/chain.hpp"
#include "recom/election.hpp"
#include "recom/graph.hpp"

namespace recom {

enum class UnitLevel { precinct, block };

const char* to_string(UnitLevel level);
UnitLevel unit_level_from_string(std::string_view name);

// Default balance tolerance by unit granularity: 2% for precinct graphs, 1%
// for block graphs.
double default_epsilon(UnitLevel level);

struct GraphMeta {
  UnitLevel unit_level = UnitLevel::precinct;
  std::vector<ContestSpec> contests;
};

struct LoadedGraph {
  Graph graph;
  GraphMeta meta;
};

// Graph files are JSON node-link documents:
//   {
//     "format": "recom-graph", "version": 1, "unit_level": "precinct",
//     "contests": ["PRES16", ...],
//     "nodes": [{"key": "A", "population": 1, "vap": 1, "county": "X",
//                "PRES16_dem": 50, "PRES16_rep": 30}, ...],
//     "links": [["A", "B"], ...]
//   }
// Vote columns default to <contest>_dem / <contest>_rep and hold either a
// number (integral counts) or a two-element [num, den] array for the exact
// fractions proration produces. An explicit contest->column table overrides
// the naming convention. load -> save -> load is the identity on all fields.
LoadedGraph load_graph(const std::filesystem::path& path,
                       const std::vector<ContestSpec>& contest_overrides = {});
void save_graph(const Graph& graph, const GraphMeta& meta, const std::filesystem::path& path);

// Contest->column table file: {"contests": [{"name": "PRES16",
// "dem_column": "d16", "rep_column": "r16"}, ...]}.
std::vector<ContestSpec> load_election_config(const std::filesystem::path& path);

// District plans keyed by node key: {"format": "recom-plan", "k": 2,
// "assignment": {"A": 0, "B": 1, ...}}.
void save_plan(const Graph& graph, const Assignment& assignment,
               const std::filesystem::path& path);
Assignment load_plan(const Graph& graph, const std::filesystem::path& path);

// SHA-256 of a file's bytes, lowercase hex. Recorded in manifests so outputs
// can be traced to the exact input graph.
std::string sha256_file(const std::filesystem::path& path);

// Everything needed to reproduce a run's outputs byte for byte, given the
// graph file. The derived-seed rule is spelled out in the document itself.
struct RunManifest {
  std::string command;
  std::string graph_path;
  std::string graph_sha256;
  UnitLevel unit_level = UnitLevel::precinct;
  ChainParams params;
  std::vector<std::int32_t> k_list;  // multiscale sweeps; single-run = {params.k}
  std::vector<ContestSpec> contests;
  std::vector<double> contest_shares;  // statewide share per contest, same order
  TiePolicy tie_policy = TiePolicy::count_rep;
  std::vector<std::string> outputs;    // files written, relative to the manifest
  std::vector<std::pair<std::int32_t, std::string>> failures;  // per-k chain failures
};

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

}  // namespace recom
