#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace recom {

// Distribution of seat outcomes across an ensemble of plans, for one contest
// at one district count. Keys are in half-seat units (2 per whole seat) so
// the count_half tie policy indexes exactly; counts are exact integers and
// sum to total.
struct SeatHistogram {
  std::int32_t k = 0;
  std::string contest;
  std::map<std::int32_t, std::int64_t> counts;  // half-seats -> number of plans
  std::int64_t total = 0;

  // Adds n plans at the given half-seat value. Throws OutOfRangeSeats when the
  // value falls outside [0, 2k].
  void add(std::int32_t half_seats, std::int64_t n = 1);
};

SeatHistogram seat_histogram(std::span<const std::int32_t> half_seat_values, std::int32_t k,
                             std::string contest);

// One cell of the multi-scale frequency surface: at district count k, the
// fraction `frequency` of plans landed on seat share `seat_fraction`. Cells
// for a fixed k carry frequencies summing to 1.
struct ScaleGridCell {
  std::int32_t k = 0;
  double seat_fraction = 0.0;
  double frequency = 0.0;
};

// Cells for every histogram, ordered by (k, seat_fraction). Histograms must
// have distinct k values; EmptyHistogram if any has total == 0.
std::vector<ScaleGridCell> to_scale_grid(std::span<const SeatHistogram> histograms);

// One point of a seats-votes cloud: a contest pins the x coordinate at its
// statewide vote share, the ensemble supplies the seat-share distribution.
struct SeatsVotesPoint {
  std::string contest;
  double vote_share = 0.0;
  std::int32_t k = 0;
  double seat_fraction = 0.0;
  double frequency = 0.0;
};

// Builds the cloud for several contests at a common district count, ordered
// by (vote_share, seat_fraction). vote_shares maps contest name -> statewide
// share; every histogram must find its contest there. The companion reference
// lines are proportionality S = V and the efficiency-gap zero line
// S = 2V - 1/2 (anchored at (0.25, 0) and (0.75, 1)); emitters draw them.
std::vector<SeatsVotesPoint> seats_votes_points(
    std::span<const std::pair<std::string, double>> vote_shares,
    std::span<const SeatHistogram> histograms);

// Distribution of summed seat outcomes over all pairs of plans, one from each
// ensemble: counts[s] = sum_i a.counts[i] * b.counts[s - i], total = a.total *
// b.total, k = a.k + b.k. Never materializes the pairs. ContestMismatch if the
// contests differ.
SeatHistogram pair_convolution(const SeatHistogram& a, const SeatHistogram& b);

// Mean Democratic seat share: sum(seats * count) / (total * k).
// Throws EmptyHistogram when total == 0.
double mean_seat_share(const SeatHistogram& histogram);

// Pointwise sum of two histograms with identical k and contest (KeyMismatch
// otherwise). Associative and commutative, with the empty histogram as
// identity: shard ensembles freely and merge.
SeatHistogram merge(const SeatHistogram& a, const SeatHistogram& b);

}  // namespace recom
