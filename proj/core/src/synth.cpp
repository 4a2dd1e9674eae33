#include "recom/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "recom/errors.hpp"

namespace recom {

LoadedGraph make_grid(const GridOptions& options) {
  const std::int32_t rows = options.rows;
  const std::int32_t cols = options.cols;
  if (rows < 1 || cols < 1) fail(ErrorCode::parse_error, "grid needs positive dimensions");
  if (options.pattern != "none" && options.pattern != "flat" && options.pattern != "city")
    fail(ErrorCode::parse_error, "unknown grid pattern '" + options.pattern + "'");
  const bool with_votes = options.pattern != "none";
  const std::int64_t n = static_cast<std::int64_t>(rows) * cols;

  // City nodes form a disk around the grid center.
  std::vector<char> in_city;
  std::int64_t city_count = 0;
  if (options.pattern == "city") {
    in_city.assign(static_cast<std::size_t>(n), 0);
    const double radius =
        options.city_radius > 0 ? options.city_radius : std::min(rows, cols) / 4.0;
    const double cr = (rows - 1) / 2.0;
    const double cc = (cols - 1) / 2.0;
    for (std::int32_t r = 0; r < rows; ++r) {
      for (std::int32_t c = 0; c < cols; ++c) {
        const double dr = r - cr;
        const double dc = c - cc;
        if (std::sqrt(dr * dr + dc * dc) <= radius) {
          in_city[static_cast<std::size_t>(r) * cols + c] = 1;
          ++city_count;
        }
      }
    }
    if (city_count == 0 || city_count == n)
      fail(ErrorCode::parse_error, "city radius leaves no urban/rural contrast");
  }

  // Per-node vote fractions of `turnout`, exact. For the city pattern the
  // rural share is solved from turnout * (city_dem * Nc + rural * Nr) ==
  // statewide_share * turnout * N, all in integer arithmetic over a common
  // denominator D (city_dem and statewide_share quantized to 1/10^6).
  constexpr std::int64_t kQuantum = 1000000;
  const auto quantize = [](double share) {
    return static_cast<std::int64_t>(std::llround(share * kQuantum));
  };
  Vote dem_city{0, 1};
  Vote dem_rural{0, 1};
  Vote rep_city{0, 1};
  Vote rep_rural{0, 1};
  if (options.pattern == "flat") {
    const std::int64_t q = quantize(options.dem_share);
    if (q < 0 || q > kQuantum) fail(ErrorCode::parse_error, "dem_share outside [0, 1]");
    dem_rural = Vote::ratio(options.turnout * q, kQuantum);
    rep_rural = Vote::ratio(options.turnout * (kQuantum - q), kQuantum);
  } else if (options.pattern == "city") {
    const std::int64_t q_city = quantize(options.city_dem);
    const std::int64_t q_state = quantize(options.statewide_share);
    if (q_city < 0 || q_city > kQuantum || q_state < 0 || q_state > kQuantum)
      fail(ErrorCode::parse_error, "vote shares outside [0, 1]");
    const std::int64_t rural_count = n - city_count;
    // rural numerator per node over denominator kQuantum * rural_count
    const __int128 rural_num =
        static_cast<__int128>(q_state) * n - static_cast<__int128>(q_city) * city_count;
    if (rural_num < 0 || rural_num > static_cast<__int128>(kQuantum) * rural_count)
      fail(ErrorCode::parse_error,
           "city share and statewide share are inconsistent for this city size");
    dem_city = Vote::ratio(options.turnout * q_city, kQuantum);
    rep_city = Vote::ratio(options.turnout * (kQuantum - q_city), kQuantum);
    const std::int64_t rn = static_cast<std::int64_t>(rural_num);
    dem_rural = Vote::ratio(options.turnout * rn, kQuantum * rural_count);
    rep_rural =
        Vote::ratio(options.turnout * (kQuantum * rural_count - rn), kQuantum * rural_count);
  }

  std::vector<NodeRecord> nodes;
  std::vector<std::string> keys;
  nodes.reserve(static_cast<std::size_t>(n));
  keys.reserve(static_cast<std::size_t>(n));
  const std::int32_t bands = std::max(1, std::min(options.county_bands, rows));
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) {
      NodeRecord record;
      record.population = options.population;
      record.vap = options.vap;
      record.county = "county" + std::to_string(r * bands / rows);
      if (with_votes) {
        const bool city =
            options.pattern == "city" && in_city[static_cast<std::size_t>(r) * cols + c];
        record.votes.push_back(city ? VotePair{dem_city, rep_city}
                                    : VotePair{dem_rural, rep_rural});
      }
      nodes.push_back(std::move(record));
      keys.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(2) * rows * cols);
  const auto id = [cols](std::int32_t r, std::int32_t c) {
    return static_cast<NodeId>(r * cols + c);
  };
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }

  GraphMeta meta;
  meta.unit_level = UnitLevel::precinct;
  std::vector<std::string> contest_names;
  if (with_votes) {
    meta.contests.push_back(ContestSpec::conventional(options.contest));
    contest_names.push_back(options.contest);
  }
  return LoadedGraph{
      build_graph(std::move(nodes), std::move(edges), std::move(contest_names), std::move(keys)),
      std::move(meta)};
}

}  // namespace recom
