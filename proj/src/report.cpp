#include "oneshot/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <tuple>

namespace oneshot::report {

namespace {

std::string format_full(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
  if (ec != std::errc{}) {
    throw std::runtime_error("report: failed to format a number");
  }
  return {buf, ptr};
}

std::string format_short(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) {
    throw std::runtime_error("report: failed to format a number");
  }
  return {buf, ptr};
}

std::string format_coord(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  if (ec != std::errc{}) {
    throw std::runtime_error("report: failed to format a coordinate");
  }
  return {buf, ptr};
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void CurveSeries::validate() const {
  if (means.size() != xs.size() || std_errors.size() != xs.size()) {
    throw std::invalid_argument("series '" + label + "': column lengths differ");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(means[i]) || !std::isfinite(std_errors[i])) {
      throw std::invalid_argument("series '" + label + "': values must be finite");
    }
    if (std_errors[i] < 0.0) {
      throw std::invalid_argument("series '" + label + "': standard errors must be nonnegative");
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("series '" + label + "': x values must be strictly increasing");
    }
  }
  if (label.find_first_of(",\"\n\r") != std::string::npos) {
    throw std::invalid_argument("series label '" + label + "' contains CSV metacharacters");
  }
}

void write_csv(std::span<const CurveSeries> series, const std::filesystem::path& path) {
  struct Row {
    const std::string* label;
    double x, mean, err;
  };
  std::vector<Row> rows;
  for (const CurveSeries& s : series) {
    s.validate();
    for (std::size_t i = 0; i < s.size(); ++i) {
      rows.push_back({&s.label, s.xs[i], s.means[i], s.std_errors[i]});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(*a.label, a.x) < std::tie(*b.label, b.x);
  });

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("write_csv: cannot open '" + path.string() + "' for writing");
  }
  out << "series,x,mean,stderr\n";
  for (const Row& row : rows) {
    out << *row.label << ',' << format_full(row.x) << ',' << format_full(row.mean) << ','
        << format_full(row.err) << '\n';
  }
  out.flush();
  if (!out) {
    throw std::runtime_error("write_csv: failed writing '" + path.string() + "'");
  }
}

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 660.0;   // plot box right edge; legend sits beyond
constexpr double kTop = 56.0;
constexpr double kBottom = 496.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

struct Axis {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;

  double place(double v, double screen_lo, double screen_hi) const {
    const double t_lo = log ? std::log10(lo) : lo;
    const double t_hi = log ? std::log10(hi) : hi;
    double t = log ? std::log10(std::max(v, lo)) : v;
    t = std::clamp(t, t_lo, t_hi);
    return screen_lo + (t - t_lo) / (t_hi - t_lo) * (screen_hi - screen_lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int k_lo = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
      const int k_hi = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
      for (int k = k_lo; k <= k_hi; ++k) {
        out.push_back(std::pow(10.0, k));
      }
      if (out.empty()) {
        out.push_back(lo);
        out.push_back(hi);
      }
      return out;
    }
    const double span = hi - lo;
    const double raw_step = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
      if (mag * mult >= raw_step) {
        step = mag * mult;
        break;
      }
    }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 1e-9 * span; v += step) {
      out.push_back(v);
    }
    return out;
  }
};

}  // namespace

void render_svg(std::span<const CurveSeries> series, const AxesSpec& axes,
                const std::filesystem::path& path) {
  if (series.empty()) {
    throw std::invalid_argument("render_svg: at least one series is required");
  }
  bool have_point = false;
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  for (const CurveSeries& s : series) {
    s.validate();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double x = s.xs[i];
      const double m = s.means[i];
      const double e = s.std_errors[i];
      if (axes.log_x && !(x > 0.0)) {
        throw std::invalid_argument("render_svg: log x axis requires positive x values");
      }
      if (axes.log_y && !(m > 0.0)) {
        throw std::invalid_argument("render_svg: log y axis requires positive means");
      }
      const double band_lo = axes.log_y && m - e <= 0.0 ? m : m - e;
      if (!have_point) {
        x_lo = x_hi = x;
        y_lo = band_lo;
        y_hi = m + e;
        have_point = true;
      } else {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, band_lo);
        y_hi = std::max(y_hi, m + e);
      }
    }
  }
  if (!have_point || !(x_hi > x_lo)) {
    throw std::invalid_argument("render_svg: degenerate x range (need at least two distinct x)");
  }

  Axis ax{axes.log_x, x_lo, x_hi};
  Axis ay{axes.log_y, y_lo, y_hi};
  if (axes.log_x) {
    ax.lo = x_lo / std::pow(10.0, 0.04 * std::log10(x_hi / x_lo));
    ax.hi = x_hi * std::pow(10.0, 0.04 * std::log10(x_hi / x_lo));
  } else {
    const double pad = 0.04 * (x_hi - x_lo);
    ax.lo = x_lo - pad;
    ax.hi = x_hi + pad;
  }
  if (axes.log_y) {
    const double ratio = y_hi > y_lo ? y_hi / y_lo : 10.0;
    ay.lo = y_lo / std::pow(10.0, 0.06 * std::log10(ratio));
    ay.hi = y_hi * std::pow(10.0, 0.06 * std::log10(ratio));
  } else {
    double pad = 0.06 * (y_hi - y_lo);
    if (pad == 0.0) pad = std::max(1.0, std::abs(y_hi)) * 0.1;
    ay.lo = y_lo - pad;
    ay.hi = y_hi + pad;
  }

  const auto px = [&](double x) { return ax.place(x, kLeft, kRight); };
  const auto py = [&](double y) { return ay.place(y, kBottom, kTop); };

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("render_svg: cannot open '" + path.string() + "' for writing");
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_short(kWidth)
      << "\" height=\"" << format_short(kHeight) << "\" viewBox=\"0 0 " << format_short(kWidth)
      << ' ' << format_short(kHeight) << "\">\n";
  out << "<style>\n"
         "text { font-family: Helvetica, Arial, sans-serif; font-size: 13px; fill: #222; }\n"
         ".title { font-size: 16px; font-weight: bold; }\n"
         ".grid { stroke: #dddddd; stroke-width: 1; }\n"
         ".axis { stroke: #333333; stroke-width: 1; }\n"
         ".mean { fill: none; stroke-width: 2; }\n"
         ".band { fill-opacity: 0.18; stroke: none; }\n"
         "</style>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << format_short(kWidth) << "\" height=\""
      << format_short(kHeight) << "\" fill=\"#ffffff\"/>\n";

  // Grid and ticks.
  for (double t : ax.ticks()) {
    const double x = px(t);
    out << "<line class=\"grid\" x1=\"" << format_coord(x) << "\" y1=\"" << format_coord(kTop)
        << "\" x2=\"" << format_coord(x) << "\" y2=\"" << format_coord(kBottom) << "\"/>\n";
    out << "<text x=\"" << format_coord(x) << "\" y=\"" << format_coord(kBottom + 20.0)
        << "\" text-anchor=\"middle\">" << xml_escape(format_short(t)) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    out << "<line class=\"grid\" x1=\"" << format_coord(kLeft) << "\" y1=\"" << format_coord(y)
        << "\" x2=\"" << format_coord(kRight) << "\" y2=\"" << format_coord(y) << "\"/>\n";
    out << "<text x=\"" << format_coord(kLeft - 8.0) << "\" y=\"" << format_coord(y + 4.0)
        << "\" text-anchor=\"end\">" << xml_escape(format_short(t)) << "</text>\n";
  }
  out << "<rect class=\"axis\" fill=\"none\" x=\"" << format_coord(kLeft) << "\" y=\""
      << format_coord(kTop) << "\" width=\"" << format_coord(kRight - kLeft) << "\" height=\""
      << format_coord(kBottom - kTop) << "\"/>\n";

  // Error bands first so every mean line draws on top.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const CurveSeries& s = series[si];
    if (s.size() < 2) continue;
    const char* color = kPalette[si % kPaletteSize];
    out << "<polygon class=\"band\" fill=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << format_coord(px(s.xs[i])) << ',' << format_coord(py(s.means[i] + s.std_errors[i]))
          << ' ';
    }
    for (std::size_t i = s.size(); i-- > 0;) {
      double lo_v = s.means[i] - s.std_errors[i];
      if (axes.log_y && lo_v <= 0.0) lo_v = ay.lo;
      out << format_coord(px(s.xs[i])) << ',' << format_coord(py(lo_v));
      if (i > 0) out << ' ';
    }
    out << "\"/>\n";
  }
  for (std::size_t si = 0; si < series.size(); ++si) {
    const CurveSeries& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    out << "<polyline class=\"mean\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) out << ' ';
      out << format_coord(px(s.xs[i])) << ',' << format_coord(py(s.means[i]));
    }
    out << "\"/>\n";
  }

  // Legend to the right of the plot box.
  const double legend_x = kRight + 16.0;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const double y = kTop + 10.0 + 22.0 * static_cast<double>(si);
    const char* color = kPalette[si % kPaletteSize];
    out << "<line class=\"mean\" stroke=\"" << color << "\" x1=\"" << format_coord(legend_x)
        << "\" y1=\"" << format_coord(y) << "\" x2=\"" << format_coord(legend_x + 26.0)
        << "\" y2=\"" << format_coord(y) << "\"/>\n";
    out << "<text x=\"" << format_coord(legend_x + 32.0) << "\" y=\"" << format_coord(y + 4.0)
        << "\">" << xml_escape(series[si].label) << "</text>\n";
  }

  if (!axes.title.empty()) {
    out << "<text class=\"title\" x=\"" << format_coord((kLeft + kRight) / 2.0)
        << "\" y=\"30\" text-anchor=\"middle\">" << xml_escape(axes.title) << "</text>\n";
  }
  if (!axes.x_label.empty()) {
    out << "<text x=\"" << format_coord((kLeft + kRight) / 2.0) << "\" y=\""
        << format_coord(kBottom + 44.0) << "\" text-anchor=\"middle\">" << xml_escape(axes.x_label)
        << "</text>\n";
  }
  if (!axes.y_label.empty()) {
    out << "<text x=\"20\" y=\"" << format_coord((kTop + kBottom) / 2.0)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << format_coord((kTop + kBottom) / 2.0) << ")\">" << xml_escape(axes.y_label)
        << "</text>\n";
  }
  out << "</svg>\n";
  out.flush();
  if (!out) {
    throw std::runtime_error("render_svg: failed writing '" + path.string() + "'");
  }
}

}  // namespace oneshot::report
