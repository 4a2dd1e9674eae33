#include "recom/election.hpp"

#include <string>

#include "recom/errors.hpp"

namespace recom {

const char* to_string(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::count_rep: return "count_rep";
    case TiePolicy::count_dem: return "count_dem";
    case TiePolicy::count_half: return "count_half";
  }
  return "count_rep";
}

TiePolicy tie_policy_from_string(std::string_view name) {
  if (name == "count_rep") return TiePolicy::count_rep;
  if (name == "count_dem") return TiePolicy::count_dem;
  if (name == "count_half") return TiePolicy::count_half;
  fail(ErrorCode::parse_error, "unknown tie policy '" + std::string(name) + "'");
}

namespace {

// One pass over the nodes, accumulating exact per-district sums.
void accumulate(const Graph& graph, const Assignment& assignment, std::int32_t contest,
                std::vector<VoteSum>& dem, std::vector<VoteSum>& rep) {
  const auto k = static_cast<std::size_t>(assignment.k());
  dem.assign(k, VoteSum{});
  rep.assign(k, VoteSum{});
  const auto c = static_cast<std::size_t>(contest);
  for (NodeId i = 0; i < graph.size(); ++i) {
    const auto d = static_cast<std::size_t>(assignment.district_of(i));
    const VotePair& v = graph.node(i).votes[c];
    dem[d].add(v.dem);
    rep[d].add(v.rep);
  }
}

}  // namespace

ElectionTally tally_election(const Graph& graph, const Assignment& assignment,
                             std::string_view contest) {
  const std::int32_t c = graph.contest_index(contest);
  std::vector<VoteSum> dem;
  std::vector<VoteSum> rep;
  accumulate(graph, assignment, c, dem, rep);
  ElectionTally tally;
  tally.contest = std::string(contest);
  tally.k = assignment.k();
  tally.per_district.reserve(dem.size());
  for (std::size_t d = 0; d < dem.size(); ++d)
    tally.per_district.emplace_back(dem[d].exact(), rep[d].exact());
  return tally;
}

SeatsResult seats_won(const Graph& graph, const Assignment& assignment, std::int32_t contest_index,
                      TiePolicy policy) {
  std::vector<VoteSum> dem;
  std::vector<VoteSum> rep;
  accumulate(graph, assignment, contest_index, dem, rep);
  SeatsResult seats;
  for (std::size_t d = 0; d < dem.size(); ++d) {
    const int cmp = dem[d].compare(rep[d]);
    if (cmp > 0) {
      ++seats.dem;
    } else if (cmp < 0) {
      ++seats.rep;
    } else {
      switch (policy) {
        case TiePolicy::count_rep: ++seats.rep; break;
        case TiePolicy::count_dem: ++seats.dem; break;
        case TiePolicy::count_half: ++seats.ties; break;
      }
    }
  }
  return seats;
}

SeatsResult seats_won(const Graph& graph, const Assignment& assignment, std::string_view contest,
                      TiePolicy policy) {
  return seats_won(graph, assignment, graph.contest_index(contest), policy);
}

double statewide_share(const Graph& graph, std::string_view contest) {
  return statewide_share_exact(graph, contest).convert_to<double>();
}

BigRat statewide_share_exact(const Graph& graph, std::string_view contest) {
  const auto c = static_cast<std::size_t>(graph.contest_index(contest));
  VoteSum dem;
  VoteSum all;
  for (NodeId i = 0; i < graph.size(); ++i) {
    const VotePair& v = graph.node(i).votes[c];
    dem.add(v.dem);
    all.add(v.dem);
    all.add(v.rep);
  }
  if (all.empty())
    fail(ErrorCode::zero_turnout, "contest '" + std::string(contest) + "' has no two-party votes");
  return dem.exact() / all.exact();
}

double seat_share(std::int32_t half_seats, std::int32_t k) {
  return static_cast<double>(half_seats) / (2.0 * static_cast<double>(k));
}

double efficiency_gap_simplified(double seat_share, double vote_share) {
  return (seat_share - 0.5) - 2.0 * (vote_share - 0.5);
}

std::vector<Vote> prorate_column(std::span<const std::int64_t> precinct_totals,
                                 std::span<const std::int32_t> block_precinct,
                                 std::span<const std::int64_t> block_vap,
                                 std::span<const std::int64_t> block_pop) {
  const auto blocks = block_precinct.size();
  if (block_vap.size() != blocks || block_pop.size() != blocks)
    fail(ErrorCode::parse_error, "block attribute arrays differ in length");
  const auto precincts = static_cast<std::int32_t>(precinct_totals.size());

  // Denominators are sums over member blocks; that identity is what makes the
  // per-precinct conservation exact rather than approximate.
  std::vector<std::int64_t> vap_sum(precinct_totals.size(), 0);
  std::vector<std::int64_t> pop_sum(precinct_totals.size(), 0);
  std::vector<std::int64_t> block_count(precinct_totals.size(), 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::int32_t p = block_precinct[b];
    if (p < 0 || p >= precincts)
      fail(ErrorCode::orphan_block,
           "block " + std::to_string(b) + " maps to precinct " + std::to_string(p) +
               " outside [0, " + std::to_string(precincts) + ")");
    if (block_vap[b] < 0 || block_pop[b] < 0)
      fail(ErrorCode::negative_attribute, "block " + std::to_string(b) + " has a negative weight");
    vap_sum[static_cast<std::size_t>(p)] += block_vap[b];
    pop_sum[static_cast<std::size_t>(p)] += block_pop[b];
    ++block_count[static_cast<std::size_t>(p)];
  }

  std::vector<Vote> result(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto p = static_cast<std::size_t>(block_precinct[b]);
    const std::int64_t total = precinct_totals[p];
    std::int64_t weight;
    std::int64_t denom;
    if (vap_sum[p] > 0) {
      weight = block_vap[b];
      denom = vap_sum[p];
    } else if (pop_sum[p] > 0) {
      weight = block_pop[b];
      denom = pop_sum[p];
    } else {
      weight = 1;
      denom = block_count[p];
    }
    const __int128 num = static_cast<__int128>(total) * weight;
    if (num > INT64_MAX || num < INT64_MIN)
      fail(ErrorCode::arithmetic_overflow,
           "prorated numerator exceeds 64-bit range at block " + std::to_string(b));
    result[b] = Vote::ratio(static_cast<std::int64_t>(num), denom);
  }
  return result;
}

std::vector<std::vector<VotePair>> prorate_to_blocks(const Graph& precincts,
                                                     std::span<const std::int32_t> block_precinct,
                                                     std::span<const std::int64_t> block_vap,
                                                     std::span<const std::int64_t> block_pop) {
  std::vector<std::vector<VotePair>> result;
  result.reserve(precincts.contest_names().size());
  const auto n = static_cast<std::size_t>(precincts.size());
  std::vector<std::int64_t> dem_col(n);
  std::vector<std::int64_t> rep_col(n);
  for (std::size_t c = 0; c < precincts.contest_names().size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      const VotePair& v = precincts.node(static_cast<NodeId>(i)).votes[c];
      if (!v.dem.is_integer() || !v.rep.is_integer())
        fail(ErrorCode::parse_error,
             "prorate_to_blocks expects integral precinct-level vote counts");
      dem_col[i] = v.dem.num;
      rep_col[i] = v.rep.num;
    }
    std::vector<Vote> dem = prorate_column(dem_col, block_precinct, block_vap, block_pop);
    std::vector<Vote> rep = prorate_column(rep_col, block_precinct, block_vap, block_pop);
    std::vector<VotePair> column(dem.size());
    for (std::size_t b = 0; b < dem.size(); ++b) column[b] = VotePair{dem[b], rep[b]};
    result.push_back(std::move(column));
  }
  return result;
}

}  // namespace recom
