#include "recom/chain.hpp"

#include <algorithm>
#include <future>
#include <string>

#include "recom/errors.hpp"

namespace recom {

void ChainParams::validate() const {
  if (k < 1) fail(ErrorCode::parse_error, "k must be at least 1");
  if (steps < 1) fail(ErrorCode::parse_error, "steps must be at least 1");
  if (epsilon < 0.0) fail(ErrorCode::parse_error, "epsilon must be nonnegative");
  if (max_tree_attempts < 1) fail(ErrorCode::parse_error, "max_tree_attempts must be positive");
  if (pair_retries < 1) fail(ErrorCode::parse_error, "pair_retries must be positive");
  if (burn_in < 0) fail(ErrorCode::parse_error, "burn_in must be nonnegative");
  if (thin < 1) fail(ErrorCode::parse_error, "thin must be positive");
}

Assignment recom_step(const Graph& graph, const Assignment& assignment, const ChainParams& params,
                      Rng& rng) {
  const auto pairs = adjacent_district_pairs(graph, assignment);
  if (pairs.empty())
    fail(ErrorCode::chain_stalled, "no adjacent district pairs to recombine (k < 2?)");
  const BalanceWindow window = params.window(graph);

  std::vector<NodeId> merged;
  for (int attempt = 0; attempt < params.pair_retries; ++attempt) {
    const auto [a, b] = pairs[rng.below(pairs.size())];
    merged.clear();
    for (NodeId i = 0; i < graph.size(); ++i) {
      const DistrictId d = assignment.district_of(i);
      if (d == a || d == b) merged.push_back(i);
    }
    try {
      Bipartition parts = bipartition(graph, merged, window, rng, params.max_tree_attempts);
      Assignment next = assignment;
      next.apply_split(graph, parts.side_a, a, parts.side_b, b);
      return next;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::balance_unreachable) throw;
    }
  }
  fail(ErrorCode::chain_stalled, "no adjacent pair admitted a balanced split in " +
                                     std::to_string(params.pair_retries) + " attempts");
}

EnsembleRun run_chain(const Graph& graph, const ChainParams& params,
                      std::span<const std::string> contests, TiePolicy policy,
                      std::span<StepObserver* const> observers) {
  params.validate();
  Rng rng(params.rng_seed);
  const BalanceWindow window = params.window(graph);
  Assignment plan = recursive_seed(graph, params.k, window, rng, params.max_tree_attempts);

  std::vector<std::int32_t> contest_ids;
  contest_ids.reserve(contests.size());
  for (const std::string& name : contests) contest_ids.push_back(graph.contest_index(name));

  EnsembleRun run{params, plan, {contests.begin(), contests.end()}, {}};
  run.seats_half.assign(contests.size(), {});
  for (auto& s : run.seats_half) s.reserve(static_cast<std::size_t>(params.steps));

  const std::int64_t total_steps = params.burn_in + params.steps * params.thin;
  std::int64_t recorded = 0;
  for (std::int64_t step = 1; step <= total_steps && recorded < params.steps; ++step) {
    if (params.k >= 2) plan = recom_step(graph, plan, params, rng);
    if (step <= params.burn_in || (step - params.burn_in) % params.thin != 0) continue;
    for (StepObserver* const obs : observers) obs->on_plan(recorded, plan);
    for (std::size_t c = 0; c < contest_ids.size(); ++c)
      run.seats_half[c].push_back(seats_won(graph, plan, contest_ids[c], policy).half_seats());
    ++recorded;
  }
  return run;
}

MultiscaleResult run_multiscale(const Graph& graph, std::span<const std::int32_t> k_list,
                                const ChainParams& base, std::span<const std::string> contests,
                                TiePolicy policy, bool parallel) {
  std::vector<std::future<EnsembleRun>> futures;
  futures.reserve(k_list.size());
  for (const std::int32_t k : k_list) {
    ChainParams params = base;
    params.k = k;
    params.rng_seed = derive_seed(base.rng_seed, static_cast<std::uint64_t>(k));
    futures.push_back(std::async(parallel ? std::launch::async : std::launch::deferred,
                                 [&graph, params, contests, policy] {
                                   return run_chain(graph, params, contests, policy);
                                 }));
  }
  MultiscaleResult result;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      result.runs.push_back(futures[i].get());
    } catch (const std::exception& e) {
      result.failures.emplace_back(k_list[i], e.what());
    }
  }
  return result;
}

}  // namespace recom
