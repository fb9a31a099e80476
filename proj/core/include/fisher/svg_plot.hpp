#pragma once

#include <string>
#include <vector>

namespace fisher {

struct LineSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> lo;  // optional band; empty for none
  std::vector<double> hi;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<LineSeries> series;
};

/// Heat map over categorical axes; `values` is row-major with one row per y.
/// Colors use a log10 scale of |value|; the legend prints the bounds.
struct HeatMap {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;
  std::vector<LineSeries> overlays;  // drawn in data coordinates, interpolated onto the cell axes
};

/// Self-contained SVG 1.1 documents with an XML declaration.
std::string render_line_plot(const LinePlot& plot);
std::string render_heat_map(const HeatMap& map);

}  // namespace fisher
