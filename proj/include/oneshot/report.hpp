#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace oneshot::report {

/// One labeled curve: x values with the estimated mean and standard error
/// of the mean at each x. Exact (analytic) curves carry zero errors.
struct CurveSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> means;
  std::vector<double> std_errors;

  std::size_t size() const { return xs.size(); }
  /// Throws std::invalid_argument unless the three vectors have equal
  /// length, all values are finite, errors are nonnegative and xs are
  /// strictly increasing.
  void validate() const;
};

/// Writes the series set as UTF-8 CSV with header `series,x,mean,stderr`,
/// rows sorted by (label, x), numbers in 17-significant-digit scientific
/// notation, LF line endings. Output is byte-deterministic for fixed
/// input. I/O failures raise std::runtime_error naming the path.
void write_csv(std::span<const CurveSeries> series, const std::filesystem::path& path);

struct AxesSpec {
  bool log_x = false;
  bool log_y = false;
  std::string x_label;
  std::string y_label;
  std::string title;
};

/// Renders a standalone SVG chart: one polyline per series mean, a
/// translucent mean +/- stderr band, a legend, and ticks (powers of 10 on
/// log axes). Deterministic bytes for fixed input. Requires at least one
/// series, a non-degenerate x range, and positive values on log axes;
/// violations raise std::invalid_argument.
void render_svg(std::span<const CurveSeries> series, const AxesSpec& axes,
                const std::filesystem::path& path);

}  // namespace oneshot::report
