#include "fisher/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "fisher/seeds.hpp"

namespace fisher {

CalibrationRecord calibrate_delta(const ParametricSampler& sampler, const ParameterPoint& theta,
                                  std::string_view param, const CalibrationOptions& options) {
  if (!(options.initial_delta > 0.0)) throw std::invalid_argument("calibrate_delta: initial delta must be > 0");
  if (!(options.target_epsilon > 0.0)) throw std::invalid_argument("calibrate_delta: target epsilon must be > 0");
  if (options.max_iterations == 0) throw std::invalid_argument("calibrate_delta: max_iterations must be >= 1");
  if (!(options.max_growth > 1.0)) throw std::invalid_argument("calibrate_delta: max_growth must exceed 1");
  if (!theta.contains(param)) throw std::invalid_argument("calibrate_delta: unknown parameter '" + std::string(param) + "'");
  options.fim.validate();

  CalibrationRecord record;
  double delta = options.initial_delta;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const SampleSet center = sampler(theta, options.samples, derive_seed(options.seed, {it, 0}));
    ArmSamples arm{std::string(param), delta,
                   sampler(theta.displaced(param, delta), options.samples, derive_seed(options.seed, {it, 1})),
                   sampler(theta.displaced(param, -delta), options.samples, derive_seed(options.seed, {it, 2}))};
    const Stencil stencil = build_stencil(theta, center, std::span<const ArmSamples>(&arm, 1), options.estimator);
    const double g = fim_entry(stencil, param, param, options.fim);
    const double eps = epsilon_radius(g, delta, options.samples);
    record.history.push_back({it + 1, delta, g, eps});
    record.delta = delta;
    record.epsilon = eps;
    if (eps <= options.target_epsilon) return record;
    const double growth = std::isfinite(eps) ? std::min(eps / options.target_epsilon, options.max_growth)
                                             : options.max_growth;
    delta *= growth;
  }
  throw CalibrationError("calibrate_delta: epsilon did not reach " + std::to_string(options.target_epsilon) +
                             " within " + std::to_string(options.max_iterations) + " iterations (last epsilon " +
                             std::to_string(record.epsilon) + ")",
                         std::move(record.history));
}

}  // namespace fisher
