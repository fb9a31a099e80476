#include "fisher/kde.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fisher {

void KdeOptions::validate() const {
  if (rule == Rule::kFixed && !(fixed_bandwidth > 0.0)) {
    throw std::invalid_argument("fixed KDE bandwidth must be > 0 (got " + std::to_string(fixed_bandwidth) + ")");
  }
}

double scott_bandwidth(const SampleSet& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("Scott's rule needs at least 2 samples");
  double mean = 0.0;
  for (double x : samples.values()) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : samples.values()) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw std::invalid_argument("Scott's rule is undefined for zero sample spread");
  return sd * std::pow(static_cast<double>(n), -0.2);
}

DensityEstimate kde_fit(const SampleSet& samples, const GridSpec& grid, const KdeOptions& options) {
  options.validate();
  if (samples.empty()) throw std::invalid_argument("kde_fit: empty sample set");
  const double bw = options.rule == KdeOptions::Rule::kScott ? scott_bandwidth(samples) : options.fixed_bandwidth;

  DensityEstimate out;
  out.grid = grid;
  out.method = DensityMethod::kKde;
  out.bandwidth = bw;
  out.sample_count = samples.size();
  out.values.assign(grid.num_points, 0.0);

  const double inv_bw = 1.0 / bw;
  const double norm = inv_bw / (std::sqrt(2.0 * std::numbers::pi) * static_cast<double>(samples.size()));
  const auto centers = grid.centers();
  for (double xi : samples.values()) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double z = (centers[i] - xi) * inv_bw;
      if (z * z < 1400.0) out.values[i] += std::exp(-0.5 * z * z);
    }
  }
  for (double& v : out.values) v *= norm;
  normalize_on_grid(out.values, grid);
  return out;
}

}  // namespace fisher
