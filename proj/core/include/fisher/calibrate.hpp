#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fisher/fim.hpp"
#include "fisher/stencil.hpp"

namespace fisher {

/// Draws `count` samples from the model at theta. Must be deterministic in (theta, count, seed).
using ParametricSampler = std::function<SampleSet(const ParameterPoint& theta, std::size_t count, std::uint64_t seed)>;

struct CalibrationOptions {
  std::size_t samples = 10000;       // N per stencil density
  double target_epsilon = 0.05;
  double initial_delta = 0.05;
  std::size_t max_iterations = 10;
  double max_growth = 4.0;           // cap on the per-iteration growth factor eps / target
  std::uint64_t seed = 0;
  FimOptions fim{FdScheme::kDensityDiff};
  EstimatorOptions estimator;
};

struct CalibrationStep {
  std::size_t iteration = 0;
  double delta = 0.0;
  double g = 0.0;
  double epsilon = 0.0;
};

struct CalibrationRecord {
  double delta = 0.0;
  double epsilon = 0.0;
  std::vector<CalibrationStep> history;
};

class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, std::vector<CalibrationStep> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<CalibrationStep>& history() const { return history_; }

 private:
  std::vector<CalibrationStep> history_;
};

/// Iterative step-size search: estimate g at the current delta, compute epsilon,
/// and while epsilon > target grow delta by min(epsilon / target, max_growth).
/// An undefined epsilon (g <= 0) grows delta by max_growth. Throws
/// CalibrationError carrying the history if max_iterations pass without success.
CalibrationRecord calibrate_delta(const ParametricSampler& sampler, const ParameterPoint& theta,
                                  std::string_view param, const CalibrationOptions& options);

}  // namespace fisher
