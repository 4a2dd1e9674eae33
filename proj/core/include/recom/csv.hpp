#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "recom/stats.hpp"

namespace recom {

// CSV schemas are fixed interchange contracts:
//   histogram:   k,seats,count,frequency        sorted by (k, seats)
//   scale grid:  k,seat_fraction,frequency,is_reference_scale
//                                               sorted by (k, seat_fraction)
//   seats-votes: contest,vote_share,k,seat_fraction,frequency
//                                               sorted by (vote_share, seat_fraction)
// Fractional columns carry six digits; whole seat counts print bare, exact
// half seats print as "x.5". Emitters are deterministic: equal inputs give
// identical bytes, distinct inputs differ.

void emit_histogram_csv(const SeatHistogram& histogram, const std::filesystem::path& path);

// Reads a histogram back; k and contest come from the caller (the CSV does
// not carry contest names). Frequencies are recomputed, not trusted.
SeatHistogram parse_histogram_csv(const std::filesystem::path& path, std::string contest);

void emit_scale_grid_csv(std::span<const ScaleGridCell> cells,
                         std::span<const std::int32_t> reference_scales,
                         const std::filesystem::path& path);

void emit_seats_votes_csv(std::span<const SeatsVotesPoint> points,
                          const std::filesystem::path& path);

// Six-fractional-digit fixed-point rendering used across all CSV output.
std::string format_fraction(double value);
// Seat count in half-seat units: "3" or "3.5".
std::string format_seats(std::int32_t half_seats);

}  // namespace recom
