#include "fisher/fim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fisher {

Matrix::Matrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) throw std::invalid_argument("matrix data does not match its dimension");
}

bool Matrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

ParameterPoint::ParameterPoint(std::initializer_list<std::pair<std::string, double>> coords)
    : ParameterPoint(std::vector<std::pair<std::string, double>>(coords)) {}

ParameterPoint::ParameterPoint(std::vector<std::pair<std::string, double>> coords) : coords_(std::move(coords)) {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i].second)) {
      throw std::invalid_argument("parameter '" + coords_[i].first + "' is not finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (coords_[i].first == coords_[j].first) {
        throw std::invalid_argument("duplicate parameter name '" + coords_[i].first + "'");
      }
    }
  }
}

double ParameterPoint::at(std::string_view name) const {
  for (const auto& [n, v] : coords_)
    if (n == name) return v;
  throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
}

bool ParameterPoint::contains(std::string_view name) const {
  return std::any_of(coords_.begin(), coords_.end(), [&](const auto& c) { return c.first == name; });
}

ParameterPoint ParameterPoint::displaced(std::string_view name, double delta) const {
  ParameterPoint out = *this;
  for (auto& [n, v] : out.coords_) {
    if (n == name) {
      v += delta;
      return out;
    }
  }
  throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
}

std::string to_string(FdScheme scheme) {
  return scheme == FdScheme::kDensityDiff ? "density_diff" : "log_diff";
}

FdScheme parse_scheme(std::string_view text) {
  if (text == "density_diff" || text == "density") return FdScheme::kDensityDiff;
  if (text == "log_diff" || text == "log") return FdScheme::kLogDiff;
  throw std::invalid_argument("unknown finite-difference scheme '" + std::string(text) + "'");
}

void FimOptions::validate() const {
  if (!(cutoff >= 1e-20 && cutoff <= 1e-2)) {
    throw std::invalid_argument("cutoff must lie in [1e-20, 1e-2] (got " + std::to_string(cutoff) + ")");
  }
  if (!(target_epsilon > 0.0)) throw std::invalid_argument("target epsilon must be positive");
  if (!(too_large_epsilon > 0.0)) throw std::invalid_argument("epsilon threshold must be positive");
}

std::string to_string(EpsilonVerdict verdict) {
  switch (verdict) {
    case EpsilonVerdict::kOk: return "OK";
    case EpsilonVerdict::kTooLarge: return "TOO_LARGE";
    case EpsilonVerdict::kUndefined: return "UNDEFINED";
  }
  return "UNDEFINED";
}

Stencil::Stencil(ParameterPoint center, DensityEstimate center_density, std::vector<StencilArm> arms,
                 std::size_t samples_per_density)
    : center_(std::move(center)),
      center_density_(std::move(center_density)),
      arms_(std::move(arms)),
      n_(samples_per_density) {
  if (center_density_.values.size() != center_density_.grid.num_points) {
    throw std::invalid_argument("stencil center density does not match its grid");
  }
  for (const auto& arm : arms_) {
    if (!center_.contains(arm.name)) {
      throw std::invalid_argument("stencil arm '" + arm.name + "' is not a parameter of the center");
    }
    if (!(arm.delta > 0.0) || !std::isfinite(arm.delta)) {
      throw std::invalid_argument("stencil arm '" + arm.name + "' needs delta > 0");
    }
    if (!(arm.plus.grid == grid()) || !(arm.minus.grid == grid())) {
      throw std::invalid_argument("stencil arm '" + arm.name + "' is not on the shared grid");
    }
  }
}

const StencilArm& Stencil::arm(std::string_view name) const {
  for (const auto& a : arms_)
    if (a.name == name) return a;
  throw std::out_of_range("stencil has no densities for parameter '" + std::string(name) + "'");
}

double fim_entry(const Stencil& stencil, std::string_view mu, std::string_view nu, const FimOptions& options) {
  options.validate();
  const StencilArm& a = stencil.arm(mu);
  const StencilArm& b = stencil.arm(nu);
  const auto& p0 = stencil.center_density().values;
  const double cut = options.cutoff;
  const double scale = 1.0 / (4.0 * a.delta * b.delta);

  double sum = 0.0;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    const double c = p0[i];
    const double ap = a.plus.values[i], am = a.minus.values[i];
    const double bp = b.plus.values[i], bm = b.minus.values[i];
    if (c < cut || ap < cut || am < cut || bp < cut || bm < cut) continue;
    if (options.scheme == FdScheme::kDensityDiff) {
      sum += (ap - am) * (bp - bm) / c;
    } else {
      sum += (std::log(ap) - std::log(am)) * (std::log(bp) - std::log(bm)) * c;
    }
  }
  return sum * scale * stencil.grid().spacing();
}

double epsilon_radius(const Matrix& g, std::span<const double> deltas, std::size_t samples) {
  if (deltas.size() != g.size()) throw std::invalid_argument("epsilon_radius: one delta per parameter required");
  if (samples == 0) throw std::invalid_argument("epsilon_radius: N must be >= 1");
  double form = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) form += g(i, j) * deltas[i] * deltas[j];
  if (!(form > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(2.0 / (static_cast<double>(samples) * form));
}

double epsilon_radius(double g_diag, double delta, std::size_t samples) {
  return epsilon_radius(Matrix(1, {g_diag}), std::span<const double>(&delta, 1), samples);
}

EpsilonReport classify_epsilon(double epsilon, const FimOptions& options) {
  EpsilonReport r;
  r.epsilon = epsilon;
  r.target = options.target_epsilon;
  if (!std::isfinite(epsilon)) {
    r.verdict = EpsilonVerdict::kUndefined;
  } else if (epsilon > options.too_large_epsilon) {
    r.verdict = EpsilonVerdict::kTooLarge;
  } else {
    r.verdict = EpsilonVerdict::kOk;
  }
  return r;
}

double overlap_probability(const Matrix& g, std::span<const double> deltas, std::size_t samples, double epsilon) {
  if (deltas.size() != g.size()) throw std::invalid_argument("overlap_probability: one delta per parameter required");
  double form = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) form += g(i, j) * deltas[i] * deltas[j];
  return std::exp(-0.5 * static_cast<double>(samples) * epsilon * epsilon * form);
}

double suggest_delta(double g_diag, std::size_t samples, double target_epsilon) {
  if (!(g_diag > 0.0)) throw std::invalid_argument("suggest_delta: Fisher information must be positive");
  if (samples == 0) throw std::invalid_argument("suggest_delta: N must be >= 1");
  if (!(target_epsilon > 0.0)) throw std::invalid_argument("suggest_delta: target epsilon must be positive");
  return std::sqrt(2.0 / (target_epsilon * target_epsilon * static_cast<double>(samples) * g_diag));
}

FimEstimate fim_matrix(const Stencil& stencil, const FimOptions& options) {
  const auto& arms = stencil.arms();
  const std::size_t d = arms.size();
  if (d == 0) throw std::invalid_argument("fim_matrix: stencil has no displaced parameters");

  FimEstimate est;
  est.options = options;
  est.samples = stencil.samples_per_density();
  est.g = Matrix(d);
  for (const auto& a : arms) est.names.push_back(a.name);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double v = fim_entry(stencil, arms[i].name, arms[j].name, options);
      est.g(i, j) = v;
      est.g(j, i) = v;
    }
  }

  est.epsilon.resize(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double eps;
      if (i == j) {
        eps = epsilon_radius(est.g(i, i), arms[i].delta, est.samples);
      } else {
        const Matrix sub(2, {est.g(i, i), est.g(i, j), est.g(j, i), est.g(j, j)});
        const double deltas[2] = {arms[i].delta, arms[j].delta};
        eps = epsilon_radius(sub, deltas, est.samples);
      }
      est.epsilon[i * d + j] = classify_epsilon(eps, options);
    }
  }
  return est;
}

}  // namespace fisher
