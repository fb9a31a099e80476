#include "fisher/stencil.hpp"

#include <stdexcept>

namespace fisher {

DensityEstimate fit_density(const SampleSet& samples, const GridSpec& grid, const EstimatorOptions& options) {
  switch (options.method) {
    case DensityMethod::kDeft: return deft_fit(samples, grid, options.deft);
    case DensityMethod::kKde: return kde_fit(samples, grid, options.kde);
    case DensityMethod::kAnalytic: break;
  }
  throw std::invalid_argument("fit_density: analytic densities are not estimated from samples");
}

GridSpec shared_grid(const SampleSet& center, std::span<const ArmSamples> arms, const EstimatorOptions& options) {
  std::vector<SampleSet> all;
  all.reserve(1 + 2 * arms.size());
  all.push_back(center);
  for (const auto& a : arms) {
    all.push_back(a.plus);
    all.push_back(a.minus);
  }
  return make_grid(all, options.deft.box, options.deft.num_points);
}

Stencil build_stencil(const ParameterPoint& theta, const SampleSet& center, std::span<const ArmSamples> arms,
                      const EstimatorOptions& options) {
  return build_stencil(theta, center, arms, shared_grid(center, arms, options), options);
}

Stencil build_stencil(const ParameterPoint& theta, const SampleSet& center, std::span<const ArmSamples> arms,
                      const GridSpec& grid, const EstimatorOptions& options) {
  std::vector<StencilArm> fitted;
  fitted.reserve(arms.size());
  for (const auto& a : arms) {
    fitted.push_back({a.name, a.delta, fit_density(a.plus, grid, options), fit_density(a.minus, grid, options)});
  }
  return Stencil(theta, fit_density(center, grid, options), std::move(fitted), center.size());
}

}  // namespace fisher
