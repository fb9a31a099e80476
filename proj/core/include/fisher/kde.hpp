#pragma once

#include "fisher/grid.hpp"

namespace fisher {

struct KdeOptions {
  enum class Rule { kScott, kFixed };
  Rule rule = Rule::kScott;
  double fixed_bandwidth = 0.0;

  static KdeOptions scott() { return {}; }
  static KdeOptions fixed(double h) { return {Rule::kFixed, h}; }
  void validate() const;
};

/// Scott's rule in one dimension: sigma_hat * N^(-1/5), sigma_hat the sample standard deviation.
double scott_bandwidth(const SampleSet& samples);

/// Gaussian-kernel estimate evaluated at cell centers, renormalized on the grid.
DensityEstimate kde_fit(const SampleSet& samples, const GridSpec& grid, const KdeOptions& options);

}  // namespace fisher
