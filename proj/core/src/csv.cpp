#include "recom/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "recom/errors.hpp"

namespace recom {

std::string format_fraction(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

std::string format_seats(std::int32_t half_seats) {
  std::string out = std::to_string(half_seats / 2);
  if (half_seats % 2) out += ".5";
  return out;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io_failure, "cannot open " + path.string() + " for writing");
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

void emit_histogram_csv(const SeatHistogram& histogram, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "k,seats,count,frequency\n";
  for (const auto& [half_seats, count] : histogram.counts) {
    out << histogram.k << ',' << format_seats(half_seats) << ',' << count << ','
        << format_fraction(static_cast<double>(count) / static_cast<double>(histogram.total))
        << '\n';
  }
  if (!out) fail(ErrorCode::io_failure, "write error on " + path.string());
}

SeatHistogram parse_histogram_csv(const std::filesystem::path& path, std::string contest) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_failure, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "k,seats,count,frequency")
    fail(ErrorCode::schema_mismatch, path.string() + " is not a histogram CSV");
  SeatHistogram histogram;
  histogram.contest = std::move(contest);
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 4)
      fail(ErrorCode::parse_error, path.string() + " has a malformed row: " + line);
    try {
      const std::int32_t k = std::stoi(fields[0]);
      if (first) {
        histogram.k = k;
        first = false;
      } else if (histogram.k != k) {
        fail(ErrorCode::parse_error, path.string() + " mixes district counts");
      }
      const std::string& seats = fields[1];
      std::int32_t half = 0;
      if (const auto dot = seats.find('.'); dot != std::string::npos) {
        if (seats.substr(dot) != ".5")
          fail(ErrorCode::parse_error, path.string() + " has a non-half seat value: " + seats);
        half = 2 * std::stoi(seats.substr(0, dot)) + 1;
      } else {
        half = 2 * std::stoi(seats);
      }
      histogram.add(half, std::stoll(fields[2]));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::parse_error, path.string() + " has a malformed row: " + line);
    }
  }
  return histogram;
}

void emit_scale_grid_csv(std::span<const ScaleGridCell> cells,
                         std::span<const std::int32_t> reference_scales,
                         const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "k,seat_fraction,frequency,is_reference_scale\n";
  for (const ScaleGridCell& cell : cells) {
    const bool reference =
        std::find(reference_scales.begin(), reference_scales.end(), cell.k) !=
        reference_scales.end();
    out << cell.k << ',' << format_fraction(cell.seat_fraction) << ','
        << format_fraction(cell.frequency) << ',' << (reference ? 1 : 0) << '\n';
  }
  if (!out) fail(ErrorCode::io_failure, "write error on " + path.string());
}

void emit_seats_votes_csv(std::span<const SeatsVotesPoint> points,
                          const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "contest,vote_share,k,seat_fraction,frequency\n";
  for (const SeatsVotesPoint& point : points) {
    out << point.contest << ',' << format_fraction(point.vote_share) << ',' << point.k << ','
        << format_fraction(point.seat_fraction) << ',' << format_fraction(point.frequency)
        << '\n';
  }
  if (!out) fail(ErrorCode::io_failure, "write error on " + path.string());
}

}  // namespace recom
