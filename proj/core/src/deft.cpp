#include "fisher/deft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fisher/cyclic_band.hpp"

namespace fisher {

void DeftOptions::validate() const {
  if (alpha < 1) throw std::invalid_argument("DEFT alpha must be >= 1");
  if (homotopy_steps < 10) throw std::invalid_argument("DEFT needs at least 10 homotopy steps");
  if (num_points < 10) throw std::invalid_argument("DEFT grid needs at least 10 points");
  if (num_points <= static_cast<std::size_t>(2 * alpha)) {
    throw std::invalid_argument("DEFT grid must have more than 2*alpha points");
  }
  if (!(newton_tolerance > 0.0)) throw std::invalid_argument("DEFT Newton tolerance must be positive");
  if (max_newton_iterations == 0) throw std::invalid_argument("DEFT needs at least one Newton iteration");
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Entries of (D^T)^alpha D^alpha for the unit-spacing periodic forward
// difference D, by distance from the diagonal.
std::vector<double> smoothness_stencil(int alpha) {
  std::vector<double> c(static_cast<std::size_t>(alpha) + 1);
  for (int k = 0; k <= alpha; ++k) {
    c[static_cast<std::size_t>(k)] = ((k % 2) ? -1.0 : 1.0) * binomial(2 * alpha, alpha + k);
  }
  return c;
}

class FieldProblem {
 public:
  FieldProblem(const std::vector<std::size_t>& counts, std::size_t inside, int alpha)
      : counts_(counts.begin(), counts.end()),
        n_(static_cast<double>(inside)),
        g_(counts.size()),
        stencil_(smoothness_stencil(alpha)) {}

  void set_prior_scale(double s) { scale_ = s; }
  double prior_scale() const { return scale_; }
  std::size_t size() const { return g_; }

  std::vector<double> apply_prior(const std::vector<double>& phi) const {
    const std::size_t b = stencil_.size() - 1;
    std::vector<double> out(g_);
    for (std::size_t i = 0; i < g_; ++i) {
      double s = stencil_[0] * phi[i];
      for (std::size_t k = 1; k <= b; ++k) s += stencil_[k] * (phi[(i + k) % g_] + phi[(i + g_ - k) % g_]);
      out[i] = scale_ * s;
    }
    return out;
  }

  double action(const std::vector<double>& phi) const {
    const auto prior = apply_prior(phi);
    const double w = n_ / static_cast<double>(g_);
    double quad = 0.0;
    double data = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < g_; ++i) {
      quad += phi[i] * prior[i];
      data += counts_[i] * phi[i];
      norm += std::exp(-phi[i]);
    }
    return 0.5 * quad + data + w * norm;
  }

  std::vector<double> gradient(const std::vector<double>& phi) const {
    auto grad = apply_prior(phi);
    const double w = n_ / static_cast<double>(g_);
    for (std::size_t i = 0; i < g_; ++i) grad[i] += counts_[i] - w * std::exp(-phi[i]);
    return grad;
  }

  CyclicBandMatrix hessian(const std::vector<double>& phi) const {
    const std::size_t b = stencil_.size() - 1;
    CyclicBandMatrix h(g_, b);
    const double w = n_ / static_cast<double>(g_);
    for (std::size_t i = 0; i < g_; ++i) {
      h.band(0, i) = scale_ * stencil_[0] + w * std::exp(-phi[i]);
      for (std::size_t k = 1; k <= b; ++k) h.band(k, i) = scale_ * stencil_[k];
    }
    return h;
  }

 private:
  std::vector<double> counts_;
  double n_;
  std::size_t g_;
  std::vector<double> stencil_;
  double scale_ = 1.0;
};

struct NewtonOutcome {
  bool converged = false;
  std::size_t iterations = 0;
  double log_det = 0.0;
};

NewtonOutcome minimize_action(const FieldProblem& problem, std::vector<double>& phi,
                              const DeftOptions& options) {
  NewtonOutcome out;
  double s_current = problem.action(phi);
  for (std::size_t it = 0; it < options.max_newton_iterations; ++it) {
    out.iterations = it + 1;
    const auto grad = problem.gradient(phi);
    const CyclicBandCholesky chol(problem.hessian(phi));
    auto step = chol.solve(grad);
    double slope = 0.0;
    double sup = 0.0;
    for (std::size_t i = 0; i < step.size(); ++i) {
      step[i] = -step[i];
      slope += grad[i] * step[i];
      sup = std::max(sup, std::abs(step[i]));
    }
    // Either the step or the predicted decrease of the action (nats) is negligible.
    if (sup < options.newton_tolerance || -0.5 * slope < options.newton_tolerance) {
      for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += step[i];
      out.converged = true;
      out.log_det = CyclicBandCholesky(problem.hessian(phi)).log_determinant();
      return out;
    }
    double t = 1.0;
    std::vector<double> trial(phi.size());
    bool accepted = false;
    while (t > 1e-12) {
      for (std::size_t i = 0; i < phi.size(); ++i) trial[i] = phi[i] + t * step[i];
      const double s_trial = problem.action(trial);
      if (std::isfinite(s_trial) && s_trial <= s_current + 1e-4 * t * slope) {
        accepted = s_trial < s_current;
        s_current = s_trial;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // Stalled at the round-off level of the action.
      if (-0.5 * slope < 1e3 * options.newton_tolerance) {
        out.converged = true;
        out.log_det = chol.log_determinant();
      }
      return out;
    }
    phi.swap(trial);
  }
  return out;
}

}  // namespace

DeftFit deft_fit_detailed(const SampleSet& samples, const GridSpec& grid, const DeftOptions& options) {
  options.validate();
  if (grid.num_points <= static_cast<std::size_t>(2 * options.alpha)) {
    throw std::invalid_argument("DEFT grid must have more than 2*alpha points");
  }
  const RawHistogram hist = histogram(samples, grid);
  if (hist.inside < 10) {
    throw std::invalid_argument("DEFT needs at least 10 samples inside the box (got " +
                                std::to_string(hist.inside) + ")");
  }

  FieldProblem problem(hist.counts, hist.inside, options.alpha);
  const double h = grid.spacing();
  const double box = grid.width();
  const std::size_t steps = options.homotopy_steps;
  const double exponent = 2.0 * options.alpha - 1.0;
  const auto g = static_cast<double>(grid.num_points);

  DeftTrace trace;
  trace.length_scales.resize(steps);
  trace.log_evidence.assign(steps, -std::numeric_limits<double>::infinity());
  trace.newton_iterations.assign(steps, 0);

  std::vector<double> phi(grid.num_points, 0.0);
  std::vector<double> best_phi;
  double best_evidence = -std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < steps; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(steps - 1);
    const double ell = box * std::pow(h / box, frac);
    trace.length_scales[k] = ell;
    // l^(2a-1) h (D^a)^T D^a with D ~ 1/h gives a prior scale of (l/h)^(2a-1).
    const double scale = std::pow(ell / h, exponent);
    problem.set_prior_scale(scale);

    std::vector<double> candidate = phi;
    const NewtonOutcome newton = minimize_action(problem, candidate, options);
    trace.newton_iterations[k] = newton.iterations;
    if (!newton.converged) continue;
    phi = std::move(candidate);

    const double evidence =
        -problem.action(phi) + 0.5 * (g - 1.0) * std::log(scale) - 0.5 * newton.log_det;
    trace.log_evidence[k] = evidence;
    if (evidence > best_evidence) {
      best_evidence = evidence;
      best_phi = phi;
      trace.selected = k;
    }
  }

  if (best_phi.empty()) {
    throw DeftConvergenceError("DEFT: Newton failed to converge at every one of the " +
                                   std::to_string(steps) + " length scales",
                               std::move(trace));
  }

  DeftFit fit;
  fit.dropped_samples = hist.dropped;
  auto& est = fit.estimate;
  est.grid = grid;
  est.method = DensityMethod::kDeft;
  est.alpha = options.alpha;
  est.length_scale = trace.length_scales[trace.selected];
  est.sample_count = hist.inside;
  const double phi_min = *std::min_element(best_phi.begin(), best_phi.end());
  est.values.resize(grid.num_points);
  for (std::size_t i = 0; i < grid.num_points; ++i) est.values[i] = std::exp(-(best_phi[i] - phi_min));
  normalize_on_grid(est.values, grid);
  fit.trace = std::move(trace);
  return fit;
}

DensityEstimate deft_fit(const SampleSet& samples, const GridSpec& grid, const DeftOptions& options) {
  return deft_fit_detailed(samples, grid, options).estimate;
}

DensityEstimate deft_fit(const SampleSet& samples, const DeftOptions& options) {
  options.validate();
  return deft_fit(samples, make_grid(samples, options.box, options.num_points), options);
}

}  // namespace fisher
