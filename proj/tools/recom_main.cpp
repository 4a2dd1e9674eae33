// recom: sample population-balanced districting plans by recombination and
// summarize the seat-share distributions of the resulting ensembles.
//
// Exit codes: 0 success, 2 usage error, 4 sampling failure (seeding or a
// stalled chain), 3 any other data/input error. Failures print one
// machine-readable JSON line to stderr.

#include <cstdio>
#include <exception>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "recom/errors.hpp"
#include "recom/version.hpp"
#include "recom/workflows.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitChain = 4;

void print_error_line(const std::string& type, const std::string& message) {
  nlohmann::ordered_json line;
  line["error"] = {{"type", type}, {"message", message}};
  std::cerr << line.dump() << "\n";
}

// Parses "2,5,10", "2..20", or a mix of both into district counts. Returns
// an empty list on malformed input.
std::vector<std::int32_t> parse_k_list(const std::string& text) {
  std::vector<std::int32_t> ks;
  std::size_t start = 0;
  try {
    while (start <= text.size()) {
      const std::size_t comma = std::min(text.find(',', start), text.size());
      const std::string item = text.substr(start, comma - start);
      if (!item.empty()) {
        const std::size_t dots = item.find("..");
        if (dots == std::string::npos) {
          ks.push_back(std::stoi(item));
        } else {
          const int lo = std::stoi(item.substr(0, dots));
          const int hi = std::stoi(item.substr(dots + 2));
          for (int k = lo; k <= hi; ++k) ks.push_back(k);
        }
      }
      start = comma + 1;
    }
  } catch (const std::exception&) {
    return {};
  }
  return ks;
}

void add_common_flags(CLI::App* cmd, recom::CommonOptions& options, std::string& tie_policy,
                      bool with_chain_knobs) {
  cmd->add_option("--graph", options.graph_path, "input graph JSON")->required();
  cmd->add_option("--seed", options.rng_seed, "base RNG seed (runs never seed from the clock)")
      ->required();
  cmd->add_option("--epsilon", [&options](const std::vector<std::string>& values) {
        try {
          options.epsilon = std::stod(values[0]);
        } catch (const std::exception&) {
          return false;
        }
        return true;
      },
      "population tolerance (default 0.02 precinct / 0.01 block)")
      ->expected(1);
  cmd->add_option("--out", [&options](const std::vector<std::string>& values) {
        options.out_dir = values[0];
        return true;
      },
      "output directory (default $RECOM_OUT_DIR, else the working directory)")
      ->expected(1);
  cmd->add_option("--contests", options.contests,
                  "contest names to tally (default: all in the graph)")
      ->delimiter(',');
  cmd->add_option("--election-config", [&options](const std::vector<std::string>& values) {
        options.election_config = values[0];
        return true;
      },
      "JSON table mapping contests to vote columns")
      ->expected(1);
  if (with_chain_knobs) {
    cmd->add_option("--steps", options.steps, "plans to record")->check(CLI::PositiveNumber);
    cmd->add_option("--tie-policy", tie_policy, "count_rep | count_dem | count_half");
    cmd->add_option("--max-tree-attempts", options.max_tree_attempts,
                    "spanning trees drawn per split before giving up");
    cmd->add_option("--pair-retries", options.pair_retries,
                    "district pairs tried per step before the chain stalls");
    cmd->add_option("--burn-in", options.burn_in, "steps discarded before recording");
    cmd->add_option("--thin", options.thin, "record every thin-th step");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-partition ensembles by spanning-tree recombination"};
  app.set_version_flag("--version", std::string(recom::kToolName) + " " + recom::kToolVersion);
  app.require_subcommand(1);

  recom::CommonOptions options;
  std::string tie_policy = "count_rep";

  // seed
  auto* seed = app.add_subcommand("seed", "draw one balanced starting plan");
  std::int32_t seed_k = 2;
  seed->add_option("--k", seed_k, "number of districts")->required();
  add_common_flags(seed, options, tie_policy, false);

  // run
  auto* run = app.add_subcommand("run", "run one chain and write seat histograms");
  std::int32_t run_k = 2;
  run->add_option("--k", run_k, "number of districts")->required();
  add_common_flags(run, options, tie_policy, true);

  // multiscale
  auto* multiscale =
      app.add_subcommand("multiscale", "sweep district counts with one chain per k");
  std::string k_list_text;
  multiscale->add_option("--k-list", k_list_text, "district counts, e.g. 2,5,10 or 2..220")
      ->required();
  bool sequential = false;
  multiscale->add_flag("--sequential", sequential, "run the sweep on one thread");
  add_common_flags(multiscale, options, tie_policy, true);

  // regions
  auto* regions =
      app.add_subcommand("regions", "independent ensembles for a two-region county split");
  std::string region_spec;
  std::int32_t k_a = 1;
  std::int32_t k_b = 1;
  std::int32_t k_full = 1;
  regions->add_option("--spec", region_spec, "region spec JSON (two county lists)")->required();
  regions->add_option("--kw", k_a, "districts for the first region")->required();
  regions->add_option("--ke", k_b, "districts for the second region")->required();
  regions->add_option("--kfull", k_full, "districts for the undivided run")->required();
  add_common_flags(regions, options, tie_policy, true);

  // stats
  auto* stats = app.add_subcommand("stats", "combine run outputs into grids and plots");
  std::vector<std::string> run_dirs;
  std::optional<std::string> stats_out;
  bool svg = false;
  stats->add_option("--runs", run_dirs, "run directories to combine")
      ->required()
      ->delimiter(',');
  stats->add_option("--out", [&stats_out](const std::vector<std::string>& values) {
        stats_out = values[0];
        return true;
      },
      "output directory")
      ->expected(1);
  stats->add_flag("--svg", svg, "also render SVG figures");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic grid graph");
  recom::GridOptions grid;
  std::optional<std::string> synth_out;
  synth->add_option("--rows", grid.rows, "grid rows")->required();
  synth->add_option("--cols", grid.cols, "grid columns")->required();
  synth->add_option("--pop", grid.population, "population per cell");
  synth->add_option("--vap", grid.vap, "voting-age population per cell");
  synth->add_option("--county-bands", grid.county_bands, "row bands acting as counties");
  synth->add_option("--pattern", grid.pattern, "none | flat | city");
  synth->add_option("--contest", grid.contest, "contest name for generated votes");
  synth->add_option("--turnout", grid.turnout, "two-party votes per cell");
  synth->add_option("--dem-share", grid.dem_share, "flat pattern: Democratic share everywhere");
  synth->add_option("--city-radius", grid.city_radius, "city pattern: disk radius in cells");
  synth->add_option("--city-dem", grid.city_dem, "city pattern: Democratic share inside the city");
  synth->add_option("--statewide", grid.statewide_share,
                    "city pattern: calibrated statewide Democratic share");
  synth->add_option("--out", [&synth_out](const std::vector<std::string>& values) {
        synth_out = values[0];
        return true;
      },
      "output graph path")
      ->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    print_error_line("UsageError", e.what());
    return kExitUsage;
  }

  try {
    options.tie_policy = recom::tie_policy_from_string(tie_policy);
    if (seed->parsed()) {
      const auto outputs = recom::cmd_seed(options, seed_k);
      std::cout << "wrote " << outputs.plan.string() << "\n";
    } else if (run->parsed()) {
      const auto outputs = recom::cmd_run(options, run_k);
      std::cout << "wrote " << outputs.histograms.size() << " histogram(s) under "
                << outputs.directory.string() << "\n";
    } else if (multiscale->parsed()) {
      const auto k_list = parse_k_list(k_list_text);
      if (k_list.empty()) {
        print_error_line("UsageError", "--k-list expects counts like 2,5,10 or 2..220");
        return kExitUsage;
      }
      const auto outputs = recom::cmd_multiscale(options, k_list, !sequential);
      std::cout << "wrote " << outputs.runs.size() << " run(s) under "
                << outputs.directory.string() << "\n";
      if (!outputs.failures.empty()) {
        for (const auto& [k, message] : outputs.failures)
          print_error_line("ChainFailure", "k=" + std::to_string(k) + ": " + message);
        return kExitChain;
      }
    } else if (regions->parsed()) {
      const auto outputs = recom::cmd_regions(options, region_spec, k_a, k_b, k_full);
      std::cout << "wrote region ensembles under " << outputs.directory.string() << "\n";
    } else if (stats->parsed()) {
      const auto outputs = recom::cmd_stats(run_dirs, stats_out, svg);
      std::cout << "wrote " << (outputs.scale_grids.size() + outputs.seats_votes.size() +
                                outputs.figures.size())
                << " file(s) under " << outputs.directory.string() << "\n";
    } else if (synth->parsed()) {
      const auto path = recom::cmd_synth(grid, synth_out);
      std::cout << "wrote " << path.string() << "\n";
    }
  } catch (const recom::Error& e) {
    print_error_line(recom::to_string(e.code()), e.what());
    return recom::is_chain_error(e.code()) ? kExitChain : kExitData;
  } catch (const std::exception& e) {
    print_error_line("InternalError", e.what());
    return kExitData;
  }
  return 0;
}
