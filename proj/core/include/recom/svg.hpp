#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "recom/stats.hpp"

namespace recom {

// Static SVG renderings of the CSV products. Self-contained vector output,
// no plotting dependency; intended for quick inspection, not publication.

// Seat-share distributions across district counts: one column of colored dots
// per k, brightness tracking frequency, with dashed vertical guides at the
// reference scales and a dashed horizontal line at the statewide vote share
// (when provided).
void render_scale_grid_svg(std::span<const ScaleGridCell> cells,
                           std::span<const std::int32_t> reference_scales,
                           std::span<const std::pair<std::string, double>> share_lines,
                           const std::filesystem::path& path);

// Seats-votes cloud with the proportionality line S = V and the
// efficiency-gap zero line S = 2V - 1/2.
void render_seats_votes_svg(std::span<const SeatsVotesPoint> points,
                            const std::filesystem::path& path);

// Seat frequency bars for a single ensemble.
void render_histogram_svg(const SeatHistogram& histogram, const std::filesystem::path& path);

}  // namespace recom
