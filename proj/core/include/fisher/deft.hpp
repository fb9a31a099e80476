#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fisher/grid.hpp"

namespace fisher {

struct DeftOptions {
  int alpha = 3;                     // order of the derivative penalized by the prior
  std::size_t num_points = 100;      // G
  BoxPolicy box = BoxPolicy::automatic();
  std::size_t homotopy_steps = 100;  // log-spaced length scales in [h_grid, box width]
  double newton_tolerance = 1e-8;    // sup-norm of the Newton step or predicted decrease of the action
  std::size_t max_newton_iterations = 200;

  void validate() const;
};

/// Evidence curve explored by the homotopy, largest length scale first.
struct DeftTrace {
  std::vector<double> length_scales;
  std::vector<double> log_evidence;  // -inf where Newton failed
  std::vector<std::size_t> newton_iterations;
  std::size_t selected = 0;
};

struct DeftFit {
  DensityEstimate estimate;
  DeftTrace trace;
  std::size_t dropped_samples = 0;
};

class DeftConvergenceError : public std::runtime_error {
 public:
  DeftConvergenceError(const std::string& what, DeftTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const DeftTrace& trace() const { return trace_; }

 private:
  DeftTrace trace_;
};

/// Field-theory density estimate with a data-selected smoothness length scale.
///
/// The density is Q = exp(-phi) / integral(exp(-phi)) on a periodic grid. For
/// each length scale l the MAP field minimizes
///   S_l[phi] = (l^(2 alpha - 1) / 2) integral (d^alpha phi)^2 + N integral R phi
///              + (N / L) integral exp(-phi),
/// where R is the raw histogram and L the box width. The last term pins the
/// normalization at the optimum so the Hessian stays positive definite. The
/// homotopy runs from the box width down to the grid spacing, warm-starting
/// Newton at each step, and l* maximizes the Laplace log-evidence
///   -S_l[phi_l] + (G - 1)/2 ln(prior scale) - 1/2 ln det(Hessian).
DeftFit deft_fit_detailed(const SampleSet& samples, const GridSpec& grid, const DeftOptions& options);

/// Grid chosen by options.box and options.num_points.
DensityEstimate deft_fit(const SampleSet& samples, const DeftOptions& options);

/// Fit on a caller-supplied grid (stencil members share one box).
DensityEstimate deft_fit(const SampleSet& samples, const GridSpec& grid, const DeftOptions& options);

}  // namespace fisher
