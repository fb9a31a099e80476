#pragma once

#include <span>
#include <string>
#include <vector>

#include "fisher/deft.hpp"
#include "fisher/fim.hpp"
#include "fisher/kde.hpp"

namespace fisher {

/// Which density estimator fills a stencil. The grid size and box policy come from
/// `deft.num_points` and `deft.box` for both estimators so DEFT and KDE can share one grid.
struct EstimatorOptions {
  DensityMethod method = DensityMethod::kDeft;
  DeftOptions deft;
  KdeOptions kde;
};

/// Estimate one density per sample set on the given grid.
DensityEstimate fit_density(const SampleSet& samples, const GridSpec& grid, const EstimatorOptions& options);

/// Sample sets for one displaced parameter.
struct ArmSamples {
  std::string name;
  double delta = 0.0;
  SampleSet plus;
  SampleSet minus;
};

/// Grid covering every sample set of the stencil under options.deft.box.
GridSpec shared_grid(const SampleSet& center, std::span<const ArmSamples> arms, const EstimatorOptions& options);

/// Fits every stencil member on one shared grid. N is taken from the center sample set.
Stencil build_stencil(const ParameterPoint& theta, const SampleSet& center, std::span<const ArmSamples> arms,
                      const EstimatorOptions& options);

Stencil build_stencil(const ParameterPoint& theta, const SampleSet& center, std::span<const ArmSamples> arms,
                      const GridSpec& grid, const EstimatorOptions& options);

}  // namespace fisher
