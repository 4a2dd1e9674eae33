#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "recom/chain.hpp"
#include "support/checks.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace recom;
using namespace recom::testing;

namespace {

// Snapshots every recorded plan's labels.
class LabelRecorder : public StepObserver {
 public:
  void on_plan(std::int64_t index, const Assignment& plan) override {
    indices.push_back(index);
    plans.emplace_back(plan.labels().begin(), plan.labels().end());
  }
  std::vector<std::int64_t> indices;
  std::vector<std::vector<DistrictId>> plans;
};

ChainParams grid_params(std::int32_t k, std::int64_t steps, std::uint64_t seed) {
  ChainParams params;
  params.k = k;
  params.steps = steps;
  params.rng_seed = seed;
  params.epsilon = 0.05;
  return params;
}

}  // namespace

TEST_SUITE("chain") {
  TEST_CASE("parameter validation rejects nonsense") {
    ChainParams params;
    params.k = 0;
    CHECK(throws_code(ErrorCode::parse_error, [&] { params.validate(); }));
    params.k = 2;
    params.steps = 0;
    CHECK(throws_code(ErrorCode::parse_error, [&] { params.validate(); }));
    params.steps = 1;
    params.epsilon = -0.1;
    CHECK(throws_code(ErrorCode::parse_error, [&] { params.validate(); }));
    params.epsilon = 0.02;
    params.thin = 0;
    CHECK(throws_code(ErrorCode::parse_error, [&] { params.validate(); }));
    params.thin = 1;
    params.burn_in = -1;
    CHECK(throws_code(ErrorCode::parse_error, [&] { params.validate(); }));
    params.burn_in = 0;
    CHECK_NOTHROW(params.validate());
  }

  TEST_CASE("one step relabels only the merged pair") {
    const auto loaded = unit_grid(6, 6);
    const Graph& g = loaded.graph;
    const ChainParams params = grid_params(4, 1, 2024);
    Rng rng(params.rng_seed);
    const Assignment before = recursive_seed(g, 4, params.window(g), rng, 1000);
    const Assignment after = recom_step(g, before, params, rng);
    std::set<DistrictId> touched;
    for (NodeId id = 0; id < g.size(); ++id) {
      if (before.district_of(id) != after.district_of(id)) {
        touched.insert(before.district_of(id));
        touched.insert(after.district_of(id));
      }
    }
    // Whatever changed stayed within one district pair.
    CHECK(touched.size() <= 2);
    CHECK(check_plan(g, after, params.window(g)).empty());
  }

  TEST_CASE("every visited plan is valid") {
    const auto loaded = unit_grid(6, 6);
    const Graph& g = loaded.graph;
    const ChainParams params = grid_params(3, 200, 42);
    LabelRecorder recorder;
    StepObserver* obs[] = {&recorder};
    run_chain(g, params, {}, TiePolicy::count_rep, obs);
    REQUIRE(recorder.plans.size() == 200);
    for (const auto& labels : recorder.plans) {
      const Assignment plan(g, labels, 3);
      CHECK(check_plan(g, plan, params.window(g)).empty());
    }
  }

  TEST_CASE("observer sees each recorded step once, in order") {
    const auto loaded = unit_grid(4, 4);
    const ChainParams params = grid_params(2, 25, 7);
    LabelRecorder recorder;
    StepObserver* obs[] = {&recorder};
    run_chain(loaded.graph, params, {}, TiePolicy::count_rep, obs);
    REQUIRE(recorder.indices.size() == 25);
    for (std::int64_t i = 0; i < 25; ++i) CHECK(recorder.indices[static_cast<std::size_t>(i)] == i);
  }

  TEST_CASE("burn-in and thinning drop the right plans") {
    const auto loaded = unit_grid(4, 4);
    const Graph& g = loaded.graph;
    ChainParams dense = grid_params(2, 21, 99);
    LabelRecorder all;
    StepObserver* obs_all[] = {&all};
    run_chain(g, dense, {}, TiePolicy::count_rep, obs_all);

    ChainParams thinned = grid_params(2, 5, 99);
    thinned.burn_in = 3;
    thinned.thin = 2;
    LabelRecorder sparse;
    StepObserver* obs_sparse[] = {&sparse};
    run_chain(g, thinned, {}, TiePolicy::count_rep, obs_sparse);

    REQUIRE(sparse.plans.size() == 5);
    // Same seed walks the same trajectory; recording picks steps 5,7,9,11,13
    // (1-based) = indices 4,6,8,10,12 of the dense record.
    for (std::size_t i = 0; i < 5; ++i) CHECK(sparse.plans[i] == all.plans[4 + 2 * i]);
  }

  TEST_CASE("identical seeds replay identical ensembles") {
    const auto loaded = city_grid(6, 6, 1.6, 0.7, 0.5);
    const Graph& g = loaded.graph;
    const std::vector<std::string> contests{"VOTE"};
    const ChainParams params = grid_params(4, 100, 42);
    LabelRecorder rec_a;
    LabelRecorder rec_b;
    StepObserver* obs_a[] = {&rec_a};
    StepObserver* obs_b[] = {&rec_b};
    const EnsembleRun a = run_chain(g, params, contests, TiePolicy::count_rep, obs_a);
    const EnsembleRun b = run_chain(g, params, contests, TiePolicy::count_rep, obs_b);
    CHECK(a.seats_half == b.seats_half);
    CHECK(rec_a.plans == rec_b.plans);
    CHECK(a.seed_plan == b.seed_plan);
  }

  TEST_CASE("transitions never read vote columns") {
    // Same adjacency and populations, different votes: the walk must match.
    const auto flat = city_grid(6, 6, 1.6, 0.7, 0.5);
    GridOptions plain;
    plain.rows = 6;
    plain.cols = 6;
    const auto none = make_grid(plain);
    const ChainParams params = grid_params(3, 120, 314159);
    LabelRecorder rec_votes;
    LabelRecorder rec_plain;
    StepObserver* obs_votes[] = {&rec_votes};
    StepObserver* obs_plain[] = {&rec_plain};
    const std::vector<std::string> contests{"VOTE"};
    run_chain(flat.graph, params, contests, TiePolicy::count_rep, obs_votes);
    run_chain(none.graph, params, {}, TiePolicy::count_rep, obs_plain);
    CHECK(rec_votes.plans == rec_plain.plans);
  }

  TEST_CASE("single district chain records the whole-graph plan") {
    const auto loaded = city_grid(4, 4, 1.1, 0.7, 0.5);
    ChainParams params;
    params.k = 1;
    params.steps = 10;
    params.rng_seed = 5;
    const std::vector<std::string> contests{"VOTE"};
    const EnsembleRun run = run_chain(loaded.graph, params, contests);
    REQUIRE(run.seats_half.size() == 1);
    REQUIRE(run.seats_half[0].size() == 10);
    // Statewide share is exactly one half, so the single district ties and
    // count_rep awards it to the Republican side: zero half-seats.
    for (const std::int32_t hs : run.seats_half[0]) CHECK(hs == 0);
  }

  TEST_CASE("multiscale sweep is order and schedule independent") {
    const auto loaded = city_grid(6, 6, 1.6, 0.7, 0.5);
    const Graph& g = loaded.graph;
    ChainParams base;
    base.epsilon = 0.05;
    base.steps = 40;
    base.rng_seed = 20;
    const std::vector<std::string> contests{"VOTE"};
    const std::vector<std::int32_t> ks{2, 3, 4};
    const std::vector<std::int32_t> reversed{4, 3, 2};
    const MultiscaleResult par = run_multiscale(g, ks, base, contests, TiePolicy::count_rep, true);
    const MultiscaleResult seq =
        run_multiscale(g, ks, base, contests, TiePolicy::count_rep, false);
    const MultiscaleResult rev =
        run_multiscale(g, reversed, base, contests, TiePolicy::count_rep, true);
    REQUIRE(par.runs.size() == 3);
    REQUIRE(seq.runs.size() == 3);
    REQUIRE(rev.runs.size() == 3);
    CHECK(par.failures.empty());
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(par.runs[i].seats_half == seq.runs[i].seats_half);
      CHECK(par.runs[i].seats_half == rev.runs[2 - i].seats_half);
      CHECK(par.runs[i].params.rng_seed == derive_seed(20, static_cast<std::uint64_t>(ks[i])));
    }
  }

  TEST_CASE("multiscale collects per-scale failures without aborting") {
    const auto loaded = unit_grid(4, 4);
    ChainParams base;
    base.epsilon = 0.0;
    base.steps = 10;
    base.rng_seed = 8;
    base.max_tree_attempts = 30;
    // k = 5 cannot divide 16 unit-population nodes exactly.
    const std::vector<std::int32_t> ks{2, 5, 4};
    const MultiscaleResult result = run_multiscale(loaded.graph, ks, base, {});
    REQUIRE(result.runs.size() == 2);
    CHECK(result.runs[0].params.k == 2);
    CHECK(result.runs[1].params.k == 4);
    REQUIRE(result.failures.size() == 1);
    CHECK(result.failures[0].first == 5);
    CHECK(!result.failures[0].second.empty());
  }

  TEST_CASE("a chain with no splittable pair reports a stall") {
    // pair_retries 1 and a single tree attempt: with this seed the one tree
    // drawn admits no exactly balanced cut, so the step gives up.
    const auto loaded = unit_grid(6, 6);
    const Graph& g = loaded.graph;
    ChainParams params;
    params.k = 2;
    params.epsilon = 0.0;
    params.steps = 50;
    params.max_tree_attempts = 1;
    params.pair_retries = 1;
    bool stalled = false;
    for (std::uint64_t seed = 0; seed < 200 && !stalled; ++seed) {
      params.rng_seed = seed;
      try {
        run_chain(g, params, {});
      } catch (const Error& e) {
        stalled = e.code() == ErrorCode::chain_stalled;
      }
    }
    CHECK(stalled);
  }
}
