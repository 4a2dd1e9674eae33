#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "recom/chain.hpp"
#include "recom/graph_io.hpp"
#include "recom/regions.hpp"
#include "recom/synth.hpp"

namespace recom {

// Implementations of the CLI subcommands, callable directly so tests can
// drive the exact code paths the binary runs. Each writes its outputs under
// an output directory and returns the paths it wrote. Output locations:
// explicit directory if given, else $RECOM_OUT_DIR, else the working
// directory.
std::filesystem::path resolve_out_dir(const std::optional<std::string>& explicit_dir);

struct CommonOptions {
  std::string graph_path;
  std::optional<std::string> election_config;
  std::vector<std::string> contests;  // empty = every contest in the graph
  std::optional<std::string> out_dir;
  std::uint64_t rng_seed = 0;
  std::optional<double> epsilon;      // default depends on the graph's unit level
  std::int64_t steps = 1;
  int max_tree_attempts = 1000;
  int pair_retries = 50;
  std::int64_t burn_in = 0;
  std::int64_t thin = 1;
  TiePolicy tie_policy = TiePolicy::count_rep;
};

struct SeedOutputs {
  std::filesystem::path plan;
  std::filesystem::path manifest;
};
SeedOutputs cmd_seed(const CommonOptions& options, std::int32_t k);

struct RunOutputs {
  std::filesystem::path directory;
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> histograms;  // one per contest
};
RunOutputs cmd_run(const CommonOptions& options, std::int32_t k);

struct MultiscaleOutputs {
  std::filesystem::path directory;
  std::filesystem::path manifest;
  std::vector<RunOutputs> runs;                                // per successful k
  std::vector<std::filesystem::path> scale_grids;              // one per contest
  std::vector<std::pair<std::int32_t, std::string>> failures;  // per-k chain failures
};
MultiscaleOutputs cmd_multiscale(const CommonOptions& options,
                                 const std::vector<std::int32_t>& k_list, bool parallel = true);

struct RegionsOutputs {
  std::filesystem::path directory;
  std::filesystem::path manifest;
  std::filesystem::path split_report;
  std::filesystem::path vote_table;
  std::vector<std::filesystem::path> histograms;  // west/east/full/pairs, per contest
};
RegionsOutputs cmd_regions(const CommonOptions& options, const std::filesystem::path& region_spec,
                           std::int32_t k_a, std::int32_t k_b, std::int32_t k_full);

struct StatsOutputs {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> scale_grids;   // per contest
  std::vector<std::filesystem::path> seats_votes;   // per k
  std::vector<std::filesystem::path> figures;       // SVGs when requested
};
StatsOutputs cmd_stats(const std::vector<std::string>& run_dirs,
                       const std::optional<std::string>& out_dir, bool svg);

std::filesystem::path cmd_synth(const GridOptions& options,
                                const std::optional<std::string>& out_path);

// Region spec file: {"regions": [{"name": "West", "counties": [...]},
// {"name": "East", "counties": [...]}]}. Exactly two regions.
std::pair<RegionSpec, RegionSpec> load_region_spec(const std::filesystem::path& path);

// The reference district counts highlighted in scale-grid output: 18 (U.S.
// House), 50 (state Senate), 203 (state House).
inline constexpr std::int32_t kReferenceScales[] = {18, 50, 203};

}  // namespace recom
