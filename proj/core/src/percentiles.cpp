#include "fisher/percentiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fisher {

double nearest_rank(std::span<const double> sorted, double percent) {
  if (sorted.empty()) throw std::invalid_argument("nearest_rank: empty input");
  if (!(percent > 0.0 && percent <= 100.0)) throw std::invalid_argument("nearest_rank: percent must lie in (0, 100]");
  const auto n = static_cast<double>(sorted.size());
  // Guard against 0.95 * 100 landing a hair above an integer.
  auto rank = static_cast<std::size_t>(std::ceil(percent / 100.0 * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

PercentileSummary summarize_percentiles(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize_percentiles: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted)
    if (std::isnan(v)) throw std::invalid_argument("summarize_percentiles: NaN in input");
  std::sort(sorted.begin(), sorted.end());
  return {nearest_rank(sorted, 5.0), nearest_rank(sorted, 50.0), nearest_rank(sorted, 95.0), sorted.size()};
}

PercentileSummary summarize_finite(std::span<const double> values) {
  std::vector<double> finite;
  for (double v : values)
    if (std::isfinite(v)) finite.push_back(v);
  if (finite.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan, 0};
  }
  return summarize_percentiles(finite);
}

std::size_t SweepResult::coord_index(const std::string& n) const {
  for (std::size_t i = 0; i < coord_names.size(); ++i)
    if (coord_names[i] == n) return i;
  throw std::out_of_range("sweep '" + name + "' has no coordinate '" + n + "'");
}

std::size_t SweepResult::metric_index(const std::string& n) const {
  for (std::size_t i = 0; i < metric_names.size(); ++i)
    if (metric_names[i] == n) return i;
  throw std::out_of_range("sweep '" + name + "' has no metric '" + n + "'");
}

}  // namespace fisher
