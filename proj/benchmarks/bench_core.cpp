#include <benchmark/benchmark.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "recom/chain.hpp"
#include "recom/election.hpp"
#include "recom/graph.hpp"
#include "recom/rng.hpp"
#include "recom/stats.hpp"
#include "recom/synth.hpp"
#include "recom/tree.hpp"

namespace {

using namespace recom;

const Graph& unit_grid_20() {
  static const Graph graph = [] {
    GridOptions options;
    options.rows = 20;
    options.cols = 20;
    return make_grid(options).graph;
  }();
  return graph;
}

const Graph& city_grid_30() {
  static const Graph graph = [] {
    GridOptions options;
    options.rows = 30;
    options.cols = 30;
    options.pattern = "city";
    return make_grid(options).graph;
  }();
  return graph;
}

void BM_random_spanning_tree(benchmark::State& state) {
  const Graph& graph = unit_grid_20();
  std::vector<NodeId> members(static_cast<std::size_t>(graph.size()));
  std::iota(members.begin(), members.end(), 0);
  Rng rng(1);
  for (auto _ : state) {
    const SpanningTree tree = random_spanning_tree(graph, members, rng);
    benchmark::DoNotOptimize(tree.subtree_pop.data());
  }
}
BENCHMARK(BM_random_spanning_tree);

void BM_bipartition(benchmark::State& state) {
  const Graph& graph = unit_grid_20();
  std::vector<NodeId> members(static_cast<std::size_t>(graph.size()));
  std::iota(members.begin(), members.end(), 0);
  const BalanceWindow window{static_cast<double>(graph.total_population()) / 2.0, 0.02};
  Rng rng(2);
  for (auto _ : state) {
    const Bipartition split = bipartition(graph, members, window, rng, 1000);
    benchmark::DoNotOptimize(split.side_a.data());
  }
}
BENCHMARK(BM_bipartition);

void BM_recom_step(benchmark::State& state) {
  const Graph& graph = city_grid_30();
  ChainParams params;
  params.k = static_cast<std::int32_t>(state.range(0));
  params.epsilon = 0.05;
  Rng rng(3);
  Assignment plan = recursive_seed(graph, params.k, params.window(graph), rng,
                                   params.max_tree_attempts);
  for (auto _ : state) {
    plan = recom_step(graph, plan, params, rng);
    benchmark::DoNotOptimize(plan.labels().data());
  }
}
BENCHMARK(BM_recom_step)->Arg(5)->Arg(10)->Arg(30);

void BM_seats_won(benchmark::State& state) {
  const Graph& graph = city_grid_30();
  ChainParams params;
  params.k = 10;
  params.epsilon = 0.05;
  Rng rng(4);
  const Assignment plan = recursive_seed(graph, params.k, params.window(graph), rng,
                                         params.max_tree_attempts);
  for (auto _ : state) {
    const SeatsResult seats = seats_won(graph, plan, "VOTE", TiePolicy::count_half);
    benchmark::DoNotOptimize(seats.dem);
  }
}
BENCHMARK(BM_seats_won);

void BM_pair_convolution(benchmark::State& state) {
  Rng rng(5);
  SeatHistogram a, b;
  a.k = 9;
  a.contest = "VOTE";
  b.k = 9;
  b.contest = "VOTE";
  for (int i = 0; i < 10000; ++i) {
    a.add(static_cast<std::int32_t>(rng.below(19)));
    b.add(static_cast<std::int32_t>(rng.below(19)));
  }
  for (auto _ : state) {
    const SeatHistogram pairs = pair_convolution(a, b);
    benchmark::DoNotOptimize(pairs.total);
  }
}
BENCHMARK(BM_pair_convolution);

}  // namespace

BENCHMARK_MAIN();
