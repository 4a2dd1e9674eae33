#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recom/election.hpp"
#include "recom/graph.hpp"
#include "recom/rng.hpp"
#include "recom/tree.hpp"

namespace recom {

struct ChainParams {
  double epsilon = 0.02;
  std::int64_t steps = 1;           // number of recorded observations
  std::uint64_t rng_seed = 0;
  int max_tree_attempts = 1000;     // spanning-tree redraws per bipartition
  std::int32_t k = 1;
  int pair_retries = 50;            // fresh adjacent pairs tried per step
  std::int64_t burn_in = 0;         // leading steps discarded before recording
  std::int64_t thin = 1;            // record every thin-th step

  void validate() const;
  BalanceWindow window(const Graph& graph) const {
    return BalanceWindow{static_cast<double>(graph.total_population()) / static_cast<double>(k),
                         epsilon};
  }
};

// Receives every recorded plan exactly once, in order. Observations are
// indexed 0..steps-1; the seed plan itself is never delivered.
class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_plan(std::int64_t index, const Assignment& plan) = 0;
};

// One chain's output: the seed plan plus, per contest, the seat outcome of
// every recorded plan in half-seat units (so count_half ties stay exact).
// seats_half[c].size() == params.steps for every contest c.
struct EnsembleRun {
  ChainParams params;
  Assignment seed_plan;
  std::vector<std::string> contests;
  std::vector<std::vector<std::int32_t>> seats_half;
};

// One recombination move: picks a uniformly random adjacent district pair,
// merges the two districts, and re-splits the union with a balanced tree cut;
// nodes outside the pair keep their labels. The lower district id takes the
// subtree side of the cut. Pairs that cannot be split in max_tree_attempts
// trees are abandoned and a fresh pair is drawn, up to pair_retries, after
// which ChainStalled is thrown. Requires k >= 2.
Assignment recom_step(const Graph& graph, const Assignment& assignment, const ChainParams& params,
                      Rng& rng);

// Seeds a plan with recursive_seed, then advances the chain, delivering each
// recorded plan to every observer and tallying seats for the named contests.
// With k == 1 the state space is the single whole-graph district, and that
// plan is recorded `steps` times. Transitions never read vote columns.
EnsembleRun run_chain(const Graph& graph, const ChainParams& params,
                      std::span<const std::string> contests,
                      TiePolicy policy = TiePolicy::count_rep,
                      std::span<StepObserver* const> observers = {});

// Independent chains at several district counts over one shared graph. Each
// k runs with rng_seed = derive_seed(base.rng_seed, k), so results do not
// depend on sweep order or scheduling; runs execute concurrently. Per-k
// failures are collected rather than aborting the sweep.
struct MultiscaleResult {
  std::vector<EnsembleRun> runs;                       // in k_list order, failures omitted
  std::vector<std::pair<std::int32_t, std::string>> failures;  // (k, error message)
};

MultiscaleResult run_multiscale(const Graph& graph, std::span<const std::int32_t> k_list,
                                const ChainParams& base, std::span<const std::string> contests,
                                TiePolicy policy = TiePolicy::count_rep, bool parallel = true);

}  // namespace recom
