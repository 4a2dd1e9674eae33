#include "recom/workflows.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "recom/csv.hpp"
#include "recom/errors.hpp"
#include "recom/svg.hpp"

namespace recom {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct PreparedRun {
  LoadedGraph loaded;
  std::vector<std::string> contests;
  ChainParams params;
  RunManifest manifest;
};

// Shared setup: load the graph, resolve contest selection and epsilon
// defaults, and prefill the manifest skeleton.
PreparedRun prepare(const CommonOptions& options, const std::string& command) {
  std::vector<ContestSpec> overrides;
  if (options.election_config) overrides = load_election_config(*options.election_config);
  PreparedRun prep{load_graph(options.graph_path, overrides), {}, {}, {}};

  if (options.contests.empty()) {
    prep.contests = prep.loaded.graph.contest_names();
  } else {
    for (const std::string& name : options.contests) {
      prep.loaded.graph.contest_index(name);  // throws UnknownContest early
      prep.contests.push_back(name);
    }
  }

  prep.params.epsilon =
      options.epsilon.value_or(default_epsilon(prep.loaded.meta.unit_level));
  prep.params.steps = options.steps;
  prep.params.rng_seed = options.rng_seed;
  prep.params.max_tree_attempts = options.max_tree_attempts;
  prep.params.pair_retries = options.pair_retries;
  prep.params.burn_in = options.burn_in;
  prep.params.thin = options.thin;

  prep.manifest.command = command;
  prep.manifest.graph_path = options.graph_path;
  prep.manifest.graph_sha256 = sha256_file(options.graph_path);
  prep.manifest.unit_level = prep.loaded.meta.unit_level;
  prep.manifest.tie_policy = options.tie_policy;
  for (const std::string& name : prep.contests) {
    const auto it = std::find_if(prep.loaded.meta.contests.begin(),
                                 prep.loaded.meta.contests.end(),
                                 [&name](const ContestSpec& c) { return c.name == name; });
    prep.manifest.contests.push_back(it != prep.loaded.meta.contests.end()
                                         ? *it
                                         : ContestSpec::conventional(name));
    prep.manifest.contest_shares.push_back(statewide_share(prep.loaded.graph, name));
  }
  return prep;
}

fs::path ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io_failure, "cannot create directory " + dir.string());
  return dir;
}

// Emits one run's histograms into `dir` and completes its manifest.
RunOutputs emit_run(const fs::path& dir, const EnsembleRun& run, RunManifest manifest) {
  RunOutputs outputs;
  outputs.directory = ensure_dir(dir);
  manifest.params = run.params;
  manifest.k_list = {run.params.k};
  for (std::size_t c = 0; c < run.contests.size(); ++c) {
    const SeatHistogram histogram =
        seat_histogram(run.seats_half[c], run.params.k, run.contests[c]);
    const fs::path file = dir / ("histogram_" + run.contests[c] + ".csv");
    emit_histogram_csv(histogram, file);
    outputs.histograms.push_back(file);
    manifest.outputs.push_back(file.filename().string());
  }
  outputs.manifest = dir / "manifest.json";
  save_manifest(manifest, outputs.manifest);
  return outputs;
}

}  // namespace

fs::path resolve_out_dir(const std::optional<std::string>& explicit_dir) {
  if (explicit_dir) return fs::path(*explicit_dir);
  if (const char* env = std::getenv("RECOM_OUT_DIR"); env && *env) return fs::path(env);
  return fs::current_path();
}

SeedOutputs cmd_seed(const CommonOptions& options, std::int32_t k) {
  PreparedRun prep = prepare(options, "seed");
  prep.params.k = k;
  prep.params.validate();
  Rng rng(prep.params.rng_seed);
  const Assignment plan = recursive_seed(prep.loaded.graph, k,
                                         prep.params.window(prep.loaded.graph), rng,
                                         prep.params.max_tree_attempts);
  validate_assignment(prep.loaded.graph, plan);

  const fs::path dir = ensure_dir(resolve_out_dir(options.out_dir));
  SeedOutputs outputs{dir / "plan.json", dir / "manifest.json"};
  save_plan(prep.loaded.graph, plan, outputs.plan);
  prep.manifest.params = prep.params;
  prep.manifest.k_list = {k};
  prep.manifest.outputs = {"plan.json"};
  save_manifest(prep.manifest, outputs.manifest);
  return outputs;
}

RunOutputs cmd_run(const CommonOptions& options, std::int32_t k) {
  PreparedRun prep = prepare(options, "run");
  prep.params.k = k;
  prep.params.validate();
  const EnsembleRun run =
      run_chain(prep.loaded.graph, prep.params, prep.contests, options.tie_policy);
  return emit_run(resolve_out_dir(options.out_dir), run, prep.manifest);
}

MultiscaleOutputs cmd_multiscale(const CommonOptions& options,
                                 const std::vector<std::int32_t>& k_list, bool parallel) {
  if (k_list.empty()) fail(ErrorCode::parse_error, "multiscale needs a nonempty k list");
  PreparedRun prep = prepare(options, "multiscale");

  MultiscaleOutputs outputs;
  outputs.directory = ensure_dir(resolve_out_dir(options.out_dir));
  const MultiscaleResult result =
      run_multiscale(prep.loaded.graph, k_list, prep.params, prep.contests, options.tie_policy,
                     parallel);
  outputs.failures = result.failures;

  // Per-contest histograms at every successful k, then one scale grid per
  // contest across all of them.
  std::map<std::string, std::vector<SeatHistogram>> by_contest;
  for (const EnsembleRun& run : result.runs) {
    RunManifest sub = prep.manifest;
    sub.command = "multiscale";
    outputs.runs.push_back(
        emit_run(outputs.directory / ("k_" + std::to_string(run.params.k)), run, sub));
    for (std::size_t c = 0; c < run.contests.size(); ++c)
      by_contest[run.contests[c]].push_back(
          seat_histogram(run.seats_half[c], run.params.k, run.contests[c]));
  }
  for (const auto& [contest, histograms] : by_contest) {
    const fs::path file = outputs.directory / ("scale_grid_" + contest + ".csv");
    emit_scale_grid_csv(to_scale_grid(histograms), kReferenceScales, file);
    outputs.scale_grids.push_back(file);
  }

  prep.manifest.params = prep.params;
  prep.manifest.k_list = k_list;
  prep.manifest.failures = result.failures;
  for (const RunOutputs& run : outputs.runs)
    prep.manifest.outputs.push_back(
        fs::relative(run.directory, outputs.directory).string() + "/");
  for (const fs::path& grid : outputs.scale_grids)
    prep.manifest.outputs.push_back(grid.filename().string());
  outputs.manifest = outputs.directory / "manifest.json";
  save_manifest(prep.manifest, outputs.manifest);
  return outputs;
}

std::pair<RegionSpec, RegionSpec> load_region_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_failure, "cannot open " + path.string());
  ordered_json doc = ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded()) fail(ErrorCode::parse_error, "invalid JSON in " + path.string());
  if (!doc.contains("regions") || !doc["regions"].is_array() || doc["regions"].size() != 2)
    fail(ErrorCode::schema_mismatch, path.string() + " needs exactly two regions");
  std::pair<RegionSpec, RegionSpec> regions;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& entry = doc["regions"][i];
    RegionSpec& spec = i == 0 ? regions.first : regions.second;
    if (!entry.contains("name") || !entry["name"].is_string() || !entry.contains("counties") ||
        !entry["counties"].is_array())
      fail(ErrorCode::schema_mismatch,
           path.string() + " regions need a name and a counties array");
    spec.name = entry["name"].get<std::string>();
    for (const auto& county : entry["counties"]) {
      if (!county.is_string())
        fail(ErrorCode::schema_mismatch, path.string() + " county names must be strings");
      if (!spec.counties.insert(county.get<std::string>()).second)
        fail(ErrorCode::county_overlap,
             "county '" + county.get<std::string>() + "' repeated in region '" + spec.name + "'");
    }
  }
  return regions;
}

RegionsOutputs cmd_regions(const CommonOptions& options, const fs::path& region_spec,
                           std::int32_t k_a, std::int32_t k_b, std::int32_t k_full) {
  PreparedRun prep = prepare(options, "regions");
  auto [region_a, region_b] = load_region_spec(region_spec);
  region_a.k_region = k_a;
  region_b.k_region = k_b;

  const RegionEnsembles ensembles =
      run_region_ensembles(prep.loaded.graph, region_a, region_b, k_full, prep.params,
                           prep.contests, options.tie_policy);

  RegionsOutputs outputs;
  outputs.directory = ensure_dir(resolve_out_dir(options.out_dir));

  ordered_json report;
  report["region_a"] = {{"name", region_a.name}, {"k", k_a}, {"population", ensembles.report.pop_a}};
  report["region_b"] = {{"name", region_b.name}, {"k", k_b}, {"population", ensembles.report.pop_b}};
  report["ratio_target"] = ensembles.report.ratio_target;
  report["deviation_persons"] = ensembles.report.deviation_persons;
  outputs.split_report = outputs.directory / "split_report.json";
  {
    std::ofstream out(outputs.split_report, std::ios::trunc);
    if (!out) fail(ErrorCode::io_failure, "cannot open " + outputs.split_report.string());
    out << report.dump(2) << "\n";
  }

  outputs.vote_table = outputs.directory / "vote_table.csv";
  {
    std::ofstream out(outputs.vote_table, std::ios::trunc);
    if (!out) fail(ErrorCode::io_failure, "cannot open " + outputs.vote_table.string());
    out << "contest," << region_a.name << "," << region_b.name << ",full\n";
    const auto table =
        region_vote_table(prep.loaded.graph, region_a, region_b, prep.contests);
    const auto cell = [](const std::optional<double>& share) {
      return share ? format_fraction(*share) : std::string();
    };
    for (const VoteTableRow& row : table)
      out << row.contest << ',' << cell(row.share_a) << ',' << cell(row.share_b) << ','
          << cell(row.share_full) << '\n';
  }

  const auto emit_set = [&](const std::string& label,
                            const std::vector<SeatHistogram>& histograms) {
    const fs::path dir = ensure_dir(outputs.directory / label);
    for (const SeatHistogram& histogram : histograms) {
      const fs::path file = dir / ("histogram_" + histogram.contest + ".csv");
      emit_histogram_csv(histogram, file);
      outputs.histograms.push_back(file);
      prep.manifest.outputs.push_back(label + "/" + file.filename().string());
    }
  };
  emit_set("region_a", ensembles.hist_a);
  emit_set("region_b", ensembles.hist_b);
  emit_set("full", ensembles.hist_full);
  emit_set("pairs", ensembles.hist_pairs);

  prep.manifest.params = prep.params;
  prep.manifest.k_list = {k_a, k_b, k_full};
  prep.manifest.outputs.insert(prep.manifest.outputs.begin(),
                               {"split_report.json", "vote_table.csv"});
  outputs.manifest = outputs.directory / "manifest.json";
  save_manifest(prep.manifest, outputs.manifest);
  return outputs;
}

StatsOutputs cmd_stats(const std::vector<std::string>& run_dirs,
                       const std::optional<std::string>& out_dir, bool svg) {
  if (run_dirs.empty()) fail(ErrorCode::parse_error, "stats needs at least one run directory");
  StatsOutputs outputs;
  outputs.directory = ensure_dir(resolve_out_dir(out_dir));

  // Collect histograms by contest across runs, with statewide shares from the
  // manifests. Runs sharing (contest, k) merge; a contest may appear at many
  // ks for the scale grid, and every contest at one k joins a seats-votes set.
  std::map<std::string, std::map<std::int32_t, SeatHistogram>> by_contest;
  std::map<std::string, double> shares;
  for (const std::string& dir : run_dirs) {
    const fs::path base(dir);
    const RunManifest manifest = load_manifest(base / "manifest.json");
    for (std::size_t c = 0; c < manifest.contests.size(); ++c) {
      const std::string& contest = manifest.contests[c].name;
      const fs::path file = base / ("histogram_" + contest + ".csv");
      if (!fs::exists(file)) continue;
      SeatHistogram histogram = parse_histogram_csv(file, contest);
      auto& slot = by_contest[contest];
      if (const auto it = slot.find(histogram.k); it != slot.end())
        it->second = merge(it->second, histogram);
      else
        slot.emplace(histogram.k, std::move(histogram));
      shares[contest] = manifest.contest_shares[c];
    }
  }
  if (by_contest.empty())
    fail(ErrorCode::schema_mismatch, "no histograms found under the given run directories");

  for (const auto& [contest, by_k] : by_contest) {
    std::vector<SeatHistogram> histograms;
    for (const auto& [k, histogram] : by_k) histograms.push_back(histogram);
    const fs::path file = outputs.directory / ("scale_grid_" + contest + ".csv");
    emit_scale_grid_csv(to_scale_grid(histograms), kReferenceScales, file);
    outputs.scale_grids.push_back(file);
    if (svg) {
      const fs::path figure = outputs.directory / ("scale_grid_" + contest + ".svg");
      const std::pair<std::string, double> line{contest, shares.at(contest)};
      render_scale_grid_svg(to_scale_grid(histograms), kReferenceScales, {&line, 1}, figure);
      outputs.figures.push_back(figure);
    }
  }

  std::set<std::int32_t> all_ks;
  for (const auto& [contest, by_k] : by_contest)
    for (const auto& [k, histogram] : by_k) all_ks.insert(k);
  for (const std::int32_t k : all_ks) {
    std::vector<SeatHistogram> at_k;
    std::vector<std::pair<std::string, double>> share_list;
    for (const auto& [contest, by_k] : by_contest) {
      if (const auto it = by_k.find(k); it != by_k.end()) {
        at_k.push_back(it->second);
        share_list.emplace_back(contest, shares.at(contest));
      }
    }
    const auto points = seats_votes_points(share_list, at_k);
    const fs::path file = outputs.directory / ("seats_votes_k" + std::to_string(k) + ".csv");
    emit_seats_votes_csv(points, file);
    outputs.seats_votes.push_back(file);
    if (svg) {
      const fs::path figure =
          outputs.directory / ("seats_votes_k" + std::to_string(k) + ".svg");
      render_seats_votes_svg(points, figure);
      outputs.figures.push_back(figure);
      for (const SeatHistogram& histogram : at_k) {
        const fs::path bars = outputs.directory / ("histogram_" + histogram.contest + "_k" +
                                                    std::to_string(k) + ".svg");
        render_histogram_svg(histogram, bars);
        outputs.figures.push_back(bars);
      }
    }
  }
  return outputs;
}

fs::path cmd_synth(const GridOptions& options, const std::optional<std::string>& out_path) {
  const LoadedGraph loaded = make_grid(options);
  fs::path path;
  if (out_path) {
    path = fs::path(*out_path);
    if (path.has_parent_path()) ensure_dir(path.parent_path());
  } else {
    path = resolve_out_dir(std::nullopt) /
           ("grid_" + std::to_string(options.rows) + "x" + std::to_string(options.cols) + ".json");
  }
  save_graph(loaded.graph, loaded.meta, path);
  return path;
}

}  // namespace recom
