#include "recom/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "recom/errors.hpp"

namespace recom {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 32.0;
constexpr double kMarginBottom = 48.0;

struct Frame {
  double x_min, x_max, y_min, y_max;
  double x(double v) const {
    return kMarginLeft + (v - x_min) / (x_max - x_min) * (kWidth - kMarginLeft - kMarginRight);
  }
  double y(double v) const {
    return kHeight - kMarginBottom -
           (v - y_min) / (y_max - y_min) * (kHeight - kMarginTop - kMarginBottom);
  }
};

std::string num(double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

// Frequency 0..1 -> cold-to-hot fill color.
std::string heat_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(40 + 215 * t);
  const int g = static_cast<int>(60 + 40 * (1.0 - std::abs(2.0 * t - 1.0)));
  const int b = static_cast<int>(200 * (1.0 - t) + 30);
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "#%02x%02x%02x", r, g, b);
  return buffer;
}

class SvgDoc {
 public:
  explicit SvgDoc(const std::filesystem::path& path) : out_(path, std::ios::trunc) {
    if (!out_) fail(ErrorCode::io_failure, "cannot open " + path.string() + " for writing");
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
         << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  ~SvgDoc() { out_ << "</svg>\n"; }

  void line(double x1, double y1, double x2, double y2, const std::string& color, double width,
            bool dashed = false) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
         << "\" y2=\"" << num(y2) << "\" stroke=\"" << color << "\" stroke-width=\"" << width
         << "\"" << (dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
  }
  void circle(double x, double y, double r, const std::string& color) {
    out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
         << "\" fill=\"" << color << "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& color) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
         << "\" height=\"" << num(h) << "\" fill=\"" << color << "\"/>\n";
  }
  void text(double x, double y, const std::string& body, int size = 12,
            const std::string& anchor = "middle") {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\""
         << " font-size=\"" << size << "\" text-anchor=\"" << anchor << "\">" << body
         << "</text>\n";
  }
  void axes(const Frame& frame, const std::string& x_label, const std::string& y_label) {
    line(frame.x(frame.x_min), frame.y(frame.y_min), frame.x(frame.x_max), frame.y(frame.y_min),
         "#333333", 1.0);
    line(frame.x(frame.x_min), frame.y(frame.y_min), frame.x(frame.x_min), frame.y(frame.y_max),
         "#333333", 1.0);
    text((kMarginLeft + kWidth - kMarginRight) / 2.0, kHeight - 12.0, x_label);
    out_ << "<text x=\"16\" y=\"" << num((kMarginTop + kHeight - kMarginBottom) / 2.0)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
         << " transform=\"rotate(-90 16 " << num((kMarginTop + kHeight - kMarginBottom) / 2.0)
         << ")\">" << y_label << "</text>\n";
  }

 private:
  std::ofstream out_;
};

}  // namespace

void render_scale_grid_svg(std::span<const ScaleGridCell> cells,
                           std::span<const std::int32_t> reference_scales,
                           std::span<const std::pair<std::string, double>> share_lines,
                           const std::filesystem::path& path) {
  double k_max = 2.0;
  for (const ScaleGridCell& cell : cells) k_max = std::max(k_max, static_cast<double>(cell.k));
  const Frame frame{0.0, k_max * 1.02, 0.0, 1.0};
  SvgDoc doc(path);
  doc.axes(frame, "number of districts", "seat share");
  for (double tick = 0.0; tick <= 1.0001; tick += 0.25) {
    doc.line(frame.x(frame.x_min) - 4, frame.y(tick), frame.x(frame.x_min), frame.y(tick),
             "#333333", 1.0);
    doc.text(frame.x(frame.x_min) - 8, frame.y(tick) + 4, num(tick), 10, "end");
  }
  for (const std::int32_t k : reference_scales) {
    if (k > k_max) continue;
    doc.line(frame.x(k), frame.y(0.0), frame.x(k), frame.y(1.0), "#999999", 1.0, true);
    doc.text(frame.x(k), frame.y(1.0) - 6, std::to_string(k), 10);
  }
  for (const auto& [contest, share] : share_lines) {
    doc.line(frame.x(frame.x_min), frame.y(share), frame.x(frame.x_max), frame.y(share),
             "#2e8b57", 1.0, true);
    doc.text(frame.x(frame.x_max), frame.y(share) - 4, contest + " vote share", 10, "end");
  }
  for (const ScaleGridCell& cell : cells)
    doc.circle(frame.x(cell.k), frame.y(cell.seat_fraction), 2.2, heat_color(cell.frequency));
}

void render_seats_votes_svg(std::span<const SeatsVotesPoint> points,
                            const std::filesystem::path& path) {
  const Frame frame{0.0, 1.0, 0.0, 1.0};
  SvgDoc doc(path);
  doc.axes(frame, "statewide vote share", "seat share");
  for (double tick = 0.0; tick <= 1.0001; tick += 0.25) {
    doc.line(frame.x(tick), frame.y(0.0), frame.x(tick), frame.y(0.0) + 4, "#333333", 1.0);
    doc.text(frame.x(tick), frame.y(0.0) + 16, num(tick), 10);
    doc.line(frame.x(0.0) - 4, frame.y(tick), frame.x(0.0), frame.y(tick), "#333333", 1.0);
    doc.text(frame.x(0.0) - 8, frame.y(tick) + 4, num(tick), 10, "end");
  }
  // Proportionality S = V, then the efficiency-gap zero line S = 2V - 1/2
  // clipped to the unit square: from (0.25, 0) to (0.75, 1).
  doc.line(frame.x(0.0), frame.y(0.0), frame.x(1.0), frame.y(1.0), "#888888", 1.0);
  doc.line(frame.x(0.25), frame.y(0.0), frame.x(0.75), frame.y(1.0), "#2e8b57", 1.2, true);
  for (const SeatsVotesPoint& point : points)
    doc.circle(frame.x(point.vote_share), frame.y(point.seat_fraction), 2.5,
               heat_color(point.frequency));
}

void render_histogram_svg(const SeatHistogram& histogram, const std::filesystem::path& path) {
  if (histogram.total == 0)
    fail(ErrorCode::empty_histogram, "cannot render an empty histogram");
  const Frame frame{-0.5, static_cast<double>(histogram.k) + 0.5, 0.0, 1.0};
  double peak = 0.0;
  for (const auto& [half_seats, count] : histogram.counts)
    peak = std::max(peak, static_cast<double>(count) / static_cast<double>(histogram.total));
  SvgDoc doc(path);
  doc.axes(frame, histogram.contest + " seats (k = " + std::to_string(histogram.k) + ")",
           "frequency");
  for (const auto& [half_seats, count] : histogram.counts) {
    const double seats = half_seats / 2.0;
    const double freq = static_cast<double>(count) / static_cast<double>(histogram.total);
    const double height = freq / (peak > 0 ? peak : 1.0) * 0.92;
    doc.rect(frame.x(seats - 0.35), frame.y(height), frame.x(seats + 0.35) - frame.x(seats - 0.35),
             frame.y(0.0) - frame.y(height), heat_color(freq));
  }
  for (std::int32_t s = 0; s <= histogram.k; ++s) {
    if (histogram.k > 30 && s % 5 != 0) continue;
    doc.text(frame.x(s), frame.y(0.0) + 16, std::to_string(s), 10);
  }
}

}  // namespace recom
