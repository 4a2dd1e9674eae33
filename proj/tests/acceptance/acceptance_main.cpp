// Release gate for the whole toolkit. Each numbered check prints one
// [PASS]/[FAIL] line with a short summary and its runtime; the process exits
// nonzero if any check fails. Check 8 depends on an externally supplied
// precinct graph and is skipped unless RECOM_PA_GRAPH points at one.
//
// Run all checks:            acceptance
// Run a subset (debugging):  acceptance 2 7

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "recom/chain.hpp"
#include "recom/election.hpp"
#include "recom/graph.hpp"
#include "recom/graph_io.hpp"
#include "recom/regions.hpp"
#include "recom/rng.hpp"
#include "recom/stats.hpp"
#include "recom/synth.hpp"
#include "recom/tree.hpp"
#include "recom/workflows.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

namespace fs = std::filesystem;
using namespace recom;
using recom::testing::check_plan;
using recom::testing::city_grid;
using recom::testing::enumerate_balanced_bipartitions;
using recom::testing::plan_mask;
using recom::testing::spearman_rho;
using recom::testing::TempDir;
using recom::testing::unit_grid;

namespace {

struct Outcome {
  enum class Status { pass, fail, skip } status;
  std::string detail;

  static Outcome pass(std::string detail) { return {Status::pass, std::move(detail)}; }
  static Outcome fail(std::string detail) { return {Status::fail, std::move(detail)}; }
  static Outcome skip(std::string detail) { return {Status::skip, std::move(detail)}; }
};

std::string format_seconds(double seconds) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.1fs", seconds);
  return buffer;
}

// Validates every delivered plan against the independent checker and keeps
// the first violation.
class PlanValidator : public StepObserver {
 public:
  PlanValidator(const Graph& graph, BalanceWindow window) : graph_(graph), window_(window) {}

  void on_plan(std::int64_t index, const Assignment& plan) override {
    ++count;
    if (!violation.empty()) return;
    const std::string problem = check_plan(graph_, plan, window_);
    if (!problem.empty())
      violation = "plan " + std::to_string(index) + ": " + problem;
  }

  std::int64_t count = 0;
  std::string violation;

 private:
  const Graph& graph_;
  BalanceWindow window_;
};

// Records the canonical bipartition mask of every delivered two-district plan.
class MaskRecorder : public StepObserver {
 public:
  explicit MaskRecorder(const Graph& graph) : graph_(graph) {}

  void on_plan(std::int64_t, const Assignment& plan) override {
    masks.push_back(plan_mask(graph_, plan));
  }

  std::vector<std::uint64_t> masks;

 private:
  const Graph& graph_;
};

// 1. Every plan a chain visits on 6x6 unit grids at k in {2,3,4}, eps = 5%,
//    10,000 steps per k, passes independent contiguity and balance checks,
//    inside a 60 second budget.
Outcome check_validity() {
  const Graph graph = unit_grid(6, 6).graph;
  const auto start = std::chrono::steady_clock::now();
  std::int64_t checked = 0;
  for (const std::int32_t k : {2, 3, 4}) {
    ChainParams params;
    params.k = k;
    params.epsilon = 0.05;
    params.steps = 10000;
    params.rng_seed = 60000 + static_cast<std::uint64_t>(k);
    PlanValidator validator(graph, params.window(graph));
    StepObserver* const observers[] = {&validator};
    run_chain(graph, params, {}, TiePolicy::count_rep, observers);
    if (!validator.violation.empty())
      return Outcome::fail("k=" + std::to_string(k) + ", " + validator.violation);
    checked += validator.count;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (checked != 30000)
    return Outcome::fail("expected 30000 recorded plans, saw " + std::to_string(checked));
  if (seconds >= 60.0)
    return Outcome::fail("took " + format_seconds(seconds) + ", budget is 60s");
  return Outcome::pass("30000/30000 plans valid across k in {2,3,4} in " +
                       format_seconds(seconds));
}

// 2. On the 4x4 unit grid at k=2, eps=0, the full set of contiguous 8|8
//    bipartitions is enumerated by brute force; a 10,000-step chain stays
//    inside that set and covers at least half of it.
Outcome check_enumeration() {
  const Graph graph = unit_grid(4, 4).graph;
  ChainParams params;
  params.k = 2;
  params.epsilon = 0.0;
  params.steps = 10000;
  params.rng_seed = 161616;

  const std::vector<std::uint64_t> all =
      enumerate_balanced_bipartitions(graph, params.window(graph));
  if (all.size() != 70)
    return Outcome::fail("enumeration found " + std::to_string(all.size()) +
                         " bipartitions, expected 70");
  const std::set<std::uint64_t> valid(all.begin(), all.end());

  MaskRecorder recorder(graph);
  StepObserver* const observers[] = {&recorder};
  run_chain(graph, params, {}, TiePolicy::count_rep, observers);

  std::set<std::uint64_t> seen;
  std::int64_t violations = 0;
  for (const std::uint64_t mask : recorder.masks) {
    if (!valid.contains(mask)) ++violations;
    seen.insert(mask);
  }
  if (violations != 0)
    return Outcome::fail(std::to_string(violations) + " visited plans fall outside the set");
  if (2 * seen.size() < valid.size())
    return Outcome::fail("chain covered only " + std::to_string(seen.size()) + " of " +
                         std::to_string(valid.size()) + " bipartitions");
  return Outcome::pass("0 violations in 10000 steps, covered " + std::to_string(seen.size()) +
                       " of 70 bipartitions");
}

// 6x6 unit-population grid carrying two contests with different geography,
// for the convolution check.
Graph two_contest_grid() {
  const std::int32_t rows = 6, cols = 6;
  std::vector<NodeRecord> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) {
      NodeRecord node;
      node.population = 1;
      node.vap = 1;
      node.county = r < rows / 2 ? "county0" : "county1";
      const double dr = r - (rows - 1) / 2.0;
      const double dc = c - (cols - 1) / 2.0;
      const bool city = dr * dr + dc * dc <= 1.5 * 1.5;
      node.votes.push_back(city ? VotePair{Vote::of(70), Vote::of(30)}
                                : VotePair{Vote::of(45), Vote::of(55)});
      node.votes.push_back(c % 2 == 0 ? VotePair{Vote::of(60), Vote::of(40)}
                                      : VotePair{Vote::of(40), Vote::of(60)});
      nodes.push_back(std::move(node));
      const NodeId id = r * cols + c;
      if (c > 0) edges.emplace_back(id - 1, id);
      if (r > 0) edges.emplace_back(id - cols, id);
    }
  }
  return build_graph(std::move(nodes), std::move(edges), {"PRES", "SEN"});
}

// 3. pair_convolution over two 100-plan ensembles equals brute-force
//    enumeration of all 10,000 plan pairs, exactly, for every contest.
Outcome check_convolution() {
  const Graph graph = two_contest_grid();
  const std::vector<std::string> contests = graph.contest_names();

  const auto ensemble = [&](std::int32_t k, std::uint64_t seed) {
    ChainParams params;
    params.k = k;
    params.epsilon = 0.05;
    params.steps = 100;
    params.rng_seed = seed;
    return run_chain(graph, params, contests, TiePolicy::count_half);
  };
  const EnsembleRun run_a = ensemble(2, 301);
  const EnsembleRun run_b = ensemble(3, 302);

  for (std::size_t c = 0; c < contests.size(); ++c) {
    const SeatHistogram hist_a = seat_histogram(run_a.seats_half[c], 2, contests[c]);
    const SeatHistogram hist_b = seat_histogram(run_b.seats_half[c], 3, contests[c]);
    const SeatHistogram convolved = pair_convolution(hist_a, hist_b);

    std::map<std::int32_t, std::int64_t> brute;
    for (const std::int32_t a : run_a.seats_half[c])
      for (const std::int32_t b : run_b.seats_half[c]) ++brute[a + b];

    if (convolved.total != 10000)
      return Outcome::fail(contests[c] + ": convolution total " +
                           std::to_string(convolved.total) + ", expected 10000");
    if (convolved.counts != brute)
      return Outcome::fail(contests[c] + ": convolution disagrees with the 10000 brute-force pairs");
  }
  return Outcome::pass("convolution matches all 10000 brute-force pairs for " +
                       std::to_string(contests.size()) + " contests");
}

// 4. The efficiency gap vanishes along S = 2V - 1/2: zero to 1e-12 for 1,000
//    sampled V in [0.25, 0.75] and at the anchor points (0.25, 0), (0.75, 1).
Outcome check_efficiency_gap_line() {
  Rng rng(42);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double v = 0.25 + 0.5 * rng.unit();
    worst = std::max(worst, std::abs(efficiency_gap_simplified(2.0 * v - 0.5, v)));
  }
  worst = std::max(worst, std::abs(efficiency_gap_simplified(0.0, 0.25)));
  worst = std::max(worst, std::abs(efficiency_gap_simplified(1.0, 0.75)));
  if (worst > 1e-12) {
    std::ostringstream detail;
    detail << "largest deviation " << worst << " exceeds 1e-12";
    return Outcome::fail(detail.str());
  }
  std::ostringstream detail;
  detail << "1000 sampled points and both anchors within " << worst << " of zero";
  return Outcome::pass(detail.str());
}

// 5. Proration onto blocks conserves every per-precinct column sum exactly
//    and leaves the statewide share identical, on a randomized 1,000-precinct
//    fixture that exercises the vap, population, and equal-shares weights.
Outcome check_proration() {
  Rng rng(5150);
  const std::int32_t precinct_count = 1000;
  std::vector<NodeRecord> precincts;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::int32_t> block_precinct;
  std::vector<std::int64_t> block_vap;
  std::vector<std::int64_t> block_pop;
  for (std::int32_t p = 0; p < precinct_count; ++p) {
    NodeRecord precinct;
    precinct.population = 1 + static_cast<std::int64_t>(rng.below(50));
    precinct.vap = static_cast<std::int64_t>(rng.below(40));
    precinct.county = "county0";
    for (int contest = 0; contest < 2; ++contest)
      precinct.votes.push_back({Vote::of(static_cast<std::int64_t>(rng.below(400))),
                                Vote::of(static_cast<std::int64_t>(rng.below(400)))});
    precincts.push_back(std::move(precinct));
    if (p > 0) edges.emplace_back(p - 1, p);

    const std::int32_t blocks = 1 + static_cast<std::int32_t>(rng.below(4));
    for (std::int32_t b = 0; b < blocks; ++b) {
      block_precinct.push_back(p);
      block_vap.push_back(static_cast<std::int64_t>(rng.below(4)));
      block_pop.push_back(static_cast<std::int64_t>(rng.below(50)));
    }
  }
  const Graph graph =
      build_graph(std::move(precincts), std::move(edges), {"GOV", "SEN"});

  const std::vector<std::vector<VotePair>> prorated =
      prorate_to_blocks(graph, block_precinct, block_vap, block_pop);

  for (std::size_t c = 0; c < prorated.size(); ++c) {
    std::vector<VoteSum> dem_by_precinct(precinct_count);
    std::vector<VoteSum> rep_by_precinct(precinct_count);
    VoteSum dem_total, rep_total, all_total;
    for (std::size_t b = 0; b < block_precinct.size(); ++b) {
      const VotePair& votes = prorated[c][b];
      dem_by_precinct[static_cast<std::size_t>(block_precinct[b])].add(votes.dem);
      rep_by_precinct[static_cast<std::size_t>(block_precinct[b])].add(votes.rep);
      dem_total.add(votes.dem);
      all_total.add(votes.dem);
      all_total.add(votes.rep);
    }
    for (std::int32_t p = 0; p < precinct_count; ++p) {
      const VotePair& original = graph.node(p).votes[c];
      if (dem_by_precinct[static_cast<std::size_t>(p)].exact() != original.dem.exact() ||
          rep_by_precinct[static_cast<std::size_t>(p)].exact() != original.rep.exact())
        return Outcome::fail(graph.contest_names()[c] + ": precinct " + std::to_string(p) +
                             " column sum changed under proration");
    }
    if (dem_total.exact() / all_total.exact() !=
        statewide_share_exact(graph, graph.contest_names()[c]))
      return Outcome::fail(graph.contest_names()[c] + ": statewide share moved");
  }
  return Outcome::pass("2000 per-precinct column sums and 2 statewide shares conserved exactly");
}

// 6. One manifest, one output: the multiscale sweep writes byte-identical
//    CSV and manifest trees across repeated parallel runs and a sequential
//    run of the same configuration.
Outcome check_determinism() {
  TempDir dir("acceptance-determinism");
  GridOptions grid;
  grid.rows = 6;
  grid.cols = 6;
  grid.pattern = "city";
  const fs::path graph = cmd_synth(grid, (dir.path() / "city.json").string());

  const auto sweep = [&](const std::string& name, bool parallel) {
    CommonOptions options;
    options.graph_path = graph.string();
    options.out_dir = (dir.path() / name).string();
    options.steps = 200;
    options.rng_seed = 99;
    cmd_multiscale(options, {2, 3, 4}, parallel);
    return dir.path() / name;
  };
  const fs::path first = sweep("parallel_1", true);
  const fs::path second = sweep("parallel_2", true);
  const fs::path third = sweep("sequential", false);

  const auto tree = [](const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (!entry.is_regular_file()) continue;
      std::ifstream in(entry.path(), std::ios::binary);
      std::ostringstream bytes;
      bytes << in.rdbuf();
      files[fs::relative(entry.path(), root).string()] = bytes.str();
    }
    return files;
  };
  const auto base = tree(first);
  if (base.size() < 8) return Outcome::fail("sweep wrote fewer files than expected");
  if (tree(second) != base) return Outcome::fail("two parallel runs differ");
  if (tree(third) != base) return Outcome::fail("sequential run differs from parallel");
  return Outcome::pass("three sweeps produced " + std::to_string(base.size()) +
                       " byte-identical files each");
}

// 7. A 30x30 city-state with a 70% Democratic urban cluster and an exactly
//    50% statewide share yields mean Democratic seat share below 0.5 at every
//    k in {5,10,30}, with the spread of outcomes shrinking as k grows.
Outcome check_city_state() {
  const LoadedGraph loaded = city_grid(30, 30, 7.5, 0.7, 0.5);
  if (statewide_share_exact(loaded.graph, "VOTE") != BigRat(1, 2))
    return Outcome::fail("fixture calibration is off: statewide share is not exactly 1/2");

  const std::vector<std::string> contests{"VOTE"};
  std::vector<double> scales, means, spreads;
  for (const std::int32_t k : {5, 10, 30}) {
    ChainParams params;
    params.k = k;
    params.epsilon = 0.05;
    params.steps = 1000;
    params.rng_seed = 70000 + static_cast<std::uint64_t>(k);
    const EnsembleRun run = run_chain(loaded.graph, params, contests, TiePolicy::count_half);

    const std::vector<std::int32_t>& halves = run.seats_half[0];
    double mean = 0.0;
    for (const std::int32_t h : halves) mean += seat_share(h, k);
    mean /= static_cast<double>(halves.size());
    double variance = 0.0;
    for (const std::int32_t h : halves) {
      const double d = seat_share(h, k) - mean;
      variance += d * d;
    }
    variance /= static_cast<double>(halves.size() - 1);

    scales.push_back(k);
    means.push_back(mean);
    spreads.push_back(std::sqrt(variance));
  }

  std::ostringstream detail;
  detail.precision(4);
  for (std::size_t i = 0; i < scales.size(); ++i) {
    detail << (i ? ", " : "") << "k=" << scales[i] << ": mean " << means[i] << " sd "
           << spreads[i];
    if (means[i] >= 0.5) {
      detail << " (not below 0.5)";
      return Outcome::fail(detail.str());
    }
  }
  const double rho = spearman_rho(scales, spreads);
  detail << ", spearman(k, sd) = " << rho;
  if (rho >= -0.8) return Outcome::fail(detail.str());
  return Outcome::pass(detail.str());
}

// 8. Against an externally supplied precinct graph (path in RECOM_PA_GRAPH):
//    PRES16 at k=18, eps=2%, 10,000 plans, mean Democratic seat share within
//    0.3783 +- 0.05 and statewide share within 0.4965 +- 0.0005.
Outcome check_external_ensemble() {
  const char* path = std::getenv("RECOM_PA_GRAPH");
  if (!path || !*path) return Outcome::skip("RECOM_PA_GRAPH not set");

  const LoadedGraph loaded = load_graph(path, {});
  const double share = statewide_share(loaded.graph, "PRES16");

  ChainParams params;
  params.k = 18;
  params.epsilon = 0.02;
  params.steps = 10000;
  params.rng_seed = 1861;
  const EnsembleRun run =
      run_chain(loaded.graph, params, std::vector<std::string>{"PRES16"}, TiePolicy::count_half);
  double mean = 0.0;
  for (const std::int32_t h : run.seats_half[0]) mean += seat_share(h, 18);
  mean /= static_cast<double>(run.seats_half[0].size());

  std::ostringstream detail;
  detail.precision(4);
  detail << "mean seat share " << mean << " (want 0.3783 +- 0.05), statewide share " << share
         << " (want 0.4965 +- 0.0005)";
  if (std::abs(mean - 0.3783) > 0.05 || std::abs(share - 0.4965) > 0.0005)
    return Outcome::fail(detail.str());
  return Outcome::pass(detail.str());
}

// 9. On a two-region split with unequal region sizes, the statewide vote
//    share equals the turnout-weighted mixture of the region shares to 1e-12,
//    and the cross-region pairs histogram total is exactly the product of the
//    two region ensemble totals.
Outcome check_region_mixture() {
  GridOptions options;
  options.rows = 8;
  options.cols = 4;
  options.county_bands = 4;
  options.pattern = "city";
  const LoadedGraph loaded = make_grid(options);

  RegionSpec region_a{"top", {"county0"}, 2};
  RegionSpec region_b{"rest", {"county1", "county2", "county3"}, 2};
  const std::vector<std::string> contests{"VOTE"};

  const auto row = region_vote_table(loaded.graph, region_a, region_b, contests).at(0);
  if (!row.share_a || !row.share_b || !row.share_full)
    return Outcome::fail("vote table has empty cells on a fixture with votes everywhere");

  const auto turnout = [&](const std::vector<NodeId>& members) {
    VoteSum sum;
    for (const NodeId id : members) {
      sum.add(loaded.graph.node(id).votes[0].dem);
      sum.add(loaded.graph.node(id).votes[0].rep);
    }
    return sum.value();
  };
  const double turnout_a = turnout(region_members(loaded.graph, region_a));
  const double turnout_b = turnout(region_members(loaded.graph, region_b));
  const double mixture = (turnout_a * *row.share_a + turnout_b * *row.share_b) /
                         (turnout_a + turnout_b);
  if (std::abs(mixture - *row.share_full) > 1e-12) {
    std::ostringstream detail;
    detail.precision(17);
    detail << "mixture " << mixture << " vs full " << *row.share_full;
    return Outcome::fail(detail.str());
  }

  ChainParams params;
  params.epsilon = 0.05;
  params.steps = 100;
  params.rng_seed = 2401;
  const RegionEnsembles ensembles = run_region_ensembles(
      loaded.graph, region_a, region_b, 4, params, contests, TiePolicy::count_half);
  if (ensembles.hist_pairs.at(0).total !=
      ensembles.hist_a.at(0).total * ensembles.hist_b.at(0).total)
    return Outcome::fail("pairs histogram total is not the product of the region totals");

  std::ostringstream detail;
  detail << "mixture identity holds to 1e-12; pairs total "
         << ensembles.hist_pairs.at(0).total << " = " << ensembles.hist_a.at(0).total << " * "
         << ensembles.hist_b.at(0).total;
  return Outcome::pass(detail.str());
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "chain validity", check_validity},
      {2, "enumeration coverage", check_enumeration},
      {3, "pair convolution exactness", check_convolution},
      {4, "efficiency gap zero line", check_efficiency_gap_line},
      {5, "proration conservation", check_proration},
      {6, "deterministic outputs", check_determinism},
      {7, "city-state seat shares", check_city_state},
      {8, "external precinct ensemble", check_external_ensemble},
      {9, "region mixture identity", check_region_mixture},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool failed = false;
  for (const Criterion& criterion : criteria) {
    if (!selected.empty() && !selected.contains(criterion.number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = Outcome::fail("unhandled exception");
    try {
      outcome = criterion.run();
    } catch (const std::exception& error) {
      outcome = Outcome::fail(std::string("exception: ") + error.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = outcome.status == Outcome::Status::pass   ? "[PASS]"
                      : outcome.status == Outcome::Status::skip ? "[SKIP]"
                                                                : "[FAIL]";
    std::printf("%s %d %s: %s (%s)\n", tag, criterion.number, criterion.name,
                outcome.detail.c_str(), format_seconds(seconds).c_str());
    std::fflush(stdout);
    if (outcome.status == Outcome::Status::fail) failed = true;
  }
  return failed ? 1 : 0;
}
