#include "recom/stats.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "recom/errors.hpp"

namespace recom {

void SeatHistogram::add(std::int32_t half_seats, std::int64_t n) {
  if (half_seats < 0 || half_seats > 2 * k)
    fail(ErrorCode::out_of_range_seats,
         std::to_string(half_seats / 2.0) + " seats outside [0, " + std::to_string(k) +
             "] for contest '" + contest + "'");
  if (n <= 0) fail(ErrorCode::out_of_range_seats, "plan count must be positive");
  counts[half_seats] += n;
  total += n;
}

SeatHistogram seat_histogram(std::span<const std::int32_t> half_seat_values, std::int32_t k,
                             std::string contest) {
  SeatHistogram h;
  h.k = k;
  h.contest = std::move(contest);
  for (const std::int32_t v : half_seat_values) h.add(v);
  return h;
}

std::vector<ScaleGridCell> to_scale_grid(std::span<const SeatHistogram> histograms) {
  std::vector<const SeatHistogram*> sorted;
  sorted.reserve(histograms.size());
  std::set<std::int32_t> ks;
  for (const SeatHistogram& h : histograms) {
    if (h.total == 0)
      fail(ErrorCode::empty_histogram, "empty histogram for k = " + std::to_string(h.k));
    if (!ks.insert(h.k).second)
      fail(ErrorCode::key_mismatch, "two histograms share k = " + std::to_string(h.k));
    sorted.push_back(&h);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const SeatHistogram* a, const SeatHistogram* b) { return a->k < b->k; });
  std::vector<ScaleGridCell> cells;
  for (const SeatHistogram* h : sorted)
    for (const auto& [half_seats, count] : h->counts)
      cells.push_back({h->k, static_cast<double>(half_seats) / (2.0 * h->k),
                       static_cast<double>(count) / static_cast<double>(h->total)});
  return cells;
}

std::vector<SeatsVotesPoint> seats_votes_points(
    std::span<const std::pair<std::string, double>> vote_shares,
    std::span<const SeatHistogram> histograms) {
  std::vector<SeatsVotesPoint> points;
  for (const SeatHistogram& h : histograms) {
    if (h.total == 0)
      fail(ErrorCode::empty_histogram, "empty histogram for contest '" + h.contest + "'");
    const auto share = std::find_if(vote_shares.begin(), vote_shares.end(),
                                    [&h](const auto& s) { return s.first == h.contest; });
    if (share == vote_shares.end())
      fail(ErrorCode::contest_mismatch, "no vote share supplied for contest '" + h.contest + "'");
    for (const auto& [half_seats, count] : h.counts)
      points.push_back({h.contest, share->second, h.k,
                        static_cast<double>(half_seats) / (2.0 * h.k),
                        static_cast<double>(count) / static_cast<double>(h.total)});
  }
  std::sort(points.begin(), points.end(), [](const SeatsVotesPoint& a, const SeatsVotesPoint& b) {
    if (a.vote_share != b.vote_share) return a.vote_share < b.vote_share;
    if (a.seat_fraction != b.seat_fraction) return a.seat_fraction < b.seat_fraction;
    return a.contest < b.contest;
  });
  return points;
}

SeatHistogram pair_convolution(const SeatHistogram& a, const SeatHistogram& b) {
  if (a.contest != b.contest)
    fail(ErrorCode::contest_mismatch,
         "cannot convolve '" + a.contest + "' with '" + b.contest + "'");
  SeatHistogram out;
  out.k = a.k + b.k;
  out.contest = a.contest;
  for (const auto& [ha, ca] : a.counts) {
    for (const auto& [hb, cb] : b.counts) {
      std::int64_t product;
      if (__builtin_mul_overflow(ca, cb, &product))
        fail(ErrorCode::arithmetic_overflow, "pair count exceeds 64-bit range");
      out.counts[ha + hb] += product;
    }
  }
  if (__builtin_mul_overflow(a.total, b.total, &out.total))
    fail(ErrorCode::arithmetic_overflow, "pair total exceeds 64-bit range");
  return out;
}

double mean_seat_share(const SeatHistogram& histogram) {
  if (histogram.total == 0)
    fail(ErrorCode::empty_histogram,
         "mean seat share of an empty histogram ('" + histogram.contest + "')");
  // sum(half_seats * count) <= 2k * total, comfortably inside int64 here.
  std::int64_t weighted = 0;
  for (const auto& [half_seats, count] : histogram.counts) {
    std::int64_t term;
    if (__builtin_mul_overflow(static_cast<std::int64_t>(half_seats), count, &term) ||
        __builtin_add_overflow(weighted, term, &weighted))
      fail(ErrorCode::arithmetic_overflow, "seat-share numerator exceeds 64-bit range");
  }
  return static_cast<double>(weighted) /
         (2.0 * static_cast<double>(histogram.k) * static_cast<double>(histogram.total));
}

SeatHistogram merge(const SeatHistogram& a, const SeatHistogram& b) {
  if (a.k != b.k || a.contest != b.contest)
    fail(ErrorCode::key_mismatch, "cannot merge histogram (k=" + std::to_string(a.k) + ", '" +
                                      a.contest + "') with (k=" + std::to_string(b.k) + ", '" +
                                      b.contest + "')");
  SeatHistogram out = a;
  for (const auto& [half_seats, count] : b.counts) out.counts[half_seats] += count;
  out.total += b.total;
  return out;
}

}  // namespace recom
