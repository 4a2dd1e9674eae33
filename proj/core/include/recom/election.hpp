#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recom/graph.hpp"
#include "recom/votes.hpp"

namespace recom {

// Maps a contest name to the node columns holding its two-party vote counts.
struct ContestSpec {
  std::string name;
  std::string dem_column;
  std::string rep_column;

  static ContestSpec conventional(std::string contest) {
    ContestSpec spec;
    spec.dem_column = contest + "_dem";
    spec.rep_column = contest + "_rep";
    spec.name = std::move(contest);
    return spec;
  }
  friend bool operator==(const ContestSpec&, const ContestSpec&) = default;
};

// How a district with exactly tied two-party totals is scored. count_half
// awards each party half a seat, which is why seat values downstream are kept
// in half-seat units.
enum class TiePolicy { count_rep, count_dem, count_half };

const char* to_string(TiePolicy policy);
TiePolicy tie_policy_from_string(std::string_view name);

// District-level two-party totals for one contest under one plan.
struct ElectionTally {
  std::string contest;
  std::int32_t k = 0;
  std::vector<std::pair<BigRat, BigRat>> per_district;  // (dem, rep), exact
};

ElectionTally tally_election(const Graph& graph, const Assignment& assignment,
                             std::string_view contest);

// Seats by party. ties is nonzero only under count_half; the other policies
// fold exact ties into the corresponding party. dem + rep + ties == k.
struct SeatsResult {
  std::int32_t dem = 0;
  std::int32_t rep = 0;
  std::int32_t ties = 0;
  std::int32_t half_seats() const { return 2 * dem + ties; }  // dem seats, halves exact
};

SeatsResult seats_won(const Graph& graph, const Assignment& assignment, std::string_view contest,
                      TiePolicy policy);
SeatsResult seats_won(const Graph& graph, const Assignment& assignment, std::int32_t contest_index,
                      TiePolicy policy);

// Statewide two-party vote fraction for the first party (dem / (dem + rep)).
// Throws ZeroTurnout when both columns sum to exactly zero.
double statewide_share(const Graph& graph, std::string_view contest);
BigRat statewide_share_exact(const Graph& graph, std::string_view contest);

double seat_share(std::int32_t half_seats, std::int32_t k);

// Equal-turnout efficiency gap: (S - 1/2) - 2 (V - 1/2). Zero along the line
// S = 2V - 1/2, which runs from (V, S) = (0.25, 0) to (0.75, 1).
double efficiency_gap_simplified(double seat_share, double vote_share);

// Prorates one precinct-level column down to blocks. Each block receives
// precinct_total * (block_vap / precinct_vap), where precinct vap is the sum
// over its member blocks; precincts with zero vap weight by population
// instead, and by equal shares when that is zero too. Per-precinct column
// sums are conserved exactly. block_precinct values outside [0, #precincts)
// raise OrphanBlock.
std::vector<Vote> prorate_column(std::span<const std::int64_t> precinct_totals,
                                 std::span<const std::int32_t> block_precinct,
                                 std::span<const std::int64_t> block_vap,
                                 std::span<const std::int64_t> block_pop);

// All vote columns of a precinct-level graph prorated onto blocks, in graph
// contest order: result[contest][block] = (dem, rep).
std::vector<std::vector<VotePair>> prorate_to_blocks(const Graph& precincts,
                                                     std::span<const std::int32_t> block_precinct,
                                                     std::span<const std::int64_t> block_vap,
                                                     std::span<const std::int64_t> block_pop);

}  // namespace recom
