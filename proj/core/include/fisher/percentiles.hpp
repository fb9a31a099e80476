#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fisher {

struct PercentileSummary {
  double p5 = 0.0;
  double median = 0.0;
  double p95 = 0.0;
  std::size_t count = 0;
};

/// Nearest-rank percentile of sorted data: element ceil(p/100 * n), 1-based, p in (0, 100].
double nearest_rank(std::span<const double> sorted, double percent);

/// 5th, 50th and 95th nearest-rank percentiles. Throws on empty input or NaN.
PercentileSummary summarize_percentiles(std::span<const double> values);

/// Same over the finite entries only; all-NaN summary with count 0 if none are finite.
PercentileSummary summarize_finite(std::span<const double> values);

enum class PlotKind { kLine, kHeatMap };

/// Which columns a plot of the table uses.
struct PlotHint {
  PlotKind kind = PlotKind::kLine;
  std::size_t x_coord = 0;
  std::size_t series_coord = 0;  // line plots: rows sharing this coordinate form one curve
  bool has_series = false;
  std::size_t y_coord = 1;       // heat maps
  std::size_t metric = 0;
  bool log_x = false;
  bool log_y = false;
  std::string title;
  std::string x_label;
  std::string y_label;
};

struct SweepRow {
  std::vector<double> coords;
  std::vector<PercentileSummary> metrics;
};

/// A table of percentile summaries indexed by sweep coordinates.
struct SweepResult {
  std::string name;
  std::vector<std::string> coord_names;
  std::vector<std::string> metric_names;
  std::vector<SweepRow> rows;
  PlotHint plot;

  std::size_t coord_index(const std::string& name) const;
  std::size_t metric_index(const std::string& name) const;
};

}  // namespace fisher
