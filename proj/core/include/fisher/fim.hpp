#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fisher/grid.hpp"

namespace fisher {

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  Matrix(std::size_t n, std::vector<double> row_major);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> data() const { return data_; }

  bool is_symmetric() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Named parameter values theta = (theta^1, ..., theta^d).
class ParameterPoint {
 public:
  ParameterPoint() = default;
  ParameterPoint(std::initializer_list<std::pair<std::string, double>> coords);
  explicit ParameterPoint(std::vector<std::pair<std::string, double>> coords);

  const std::vector<std::pair<std::string, double>>& coords() const { return coords_; }
  double at(std::string_view name) const;
  bool contains(std::string_view name) const;

  /// Copy with only `name` shifted by delta.
  ParameterPoint displaced(std::string_view name, double delta) const;

 private:
  std::vector<std::pair<std::string, double>> coords_;
};

enum class FdScheme {
  kDensityDiff,  // integral of (p+ - p-)_mu (p+ - p-)_nu / (4 d_mu d_nu p)
  kLogDiff,      // integral of (ln p+ - ln p-)_mu (ln p+ - ln p-)_nu p / (4 d_mu d_nu)
};

std::string to_string(FdScheme scheme);
FdScheme parse_scheme(std::string_view text);

struct FimOptions {
  FdScheme scheme = FdScheme::kLogDiff;
  double cutoff = 1e-10;             // density units
  double target_epsilon = 0.05;
  double too_large_epsilon = 0.1;

  void validate() const;
};

enum class EpsilonVerdict { kOk, kTooLarge, kUndefined };

std::string to_string(EpsilonVerdict verdict);

struct EpsilonReport {
  double epsilon = 0.0;
  double target = 0.05;
  EpsilonVerdict verdict = EpsilonVerdict::kUndefined;
};

/// One displaced parameter of a stencil: densities at theta +/- delta along `name`.
struct StencilArm {
  std::string name;
  double delta = 0.0;
  DensityEstimate plus;
  DensityEstimate minus;
};

/// Densities at theta and at theta +/- delta^mu for each varied parameter, on one grid.
class Stencil {
 public:
  Stencil(ParameterPoint center, DensityEstimate center_density, std::vector<StencilArm> arms,
          std::size_t samples_per_density);

  const ParameterPoint& center() const { return center_; }
  const DensityEstimate& center_density() const { return center_density_; }
  const std::vector<StencilArm>& arms() const { return arms_; }
  const StencilArm& arm(std::string_view name) const;
  std::size_t samples_per_density() const { return n_; }
  const GridSpec& grid() const { return center_density_.grid; }

 private:
  ParameterPoint center_;
  DensityEstimate center_density_;
  std::vector<StencilArm> arms_;
  std::size_t n_;
};

struct FimEstimate {
  std::vector<std::string> names;
  Matrix g;
  std::vector<EpsilonReport> epsilon;  // row-major d x d
  std::size_t samples = 0;
  FimOptions options;

  const EpsilonReport& epsilon_at(std::size_t i, std::size_t j) const { return epsilon[i * names.size() + j]; }
};

/// Centered finite-difference estimate of g_{mu nu}. A cell contributes zero if any
/// density in its integrand (center included) is below options.cutoff.
double fim_entry(const Stencil& stencil, std::string_view mu, std::string_view nu, const FimOptions& options);

/// All entries, symmetric by construction, with an epsilon report per entry.
/// Diagonal reports use g_mm d_m^2; off-diagonal (m, n) use the 2x2 quadratic form on (d_m, d_n).
FimEstimate fim_matrix(const Stencil& stencil, const FimOptions& options);

/// epsilon = sqrt(2 / (N g_{mu nu} d^mu d^nu)); +infinity when the quadratic form is <= 0.
double epsilon_radius(const Matrix& g, std::span<const double> deltas, std::size_t samples);
double epsilon_radius(double g_diag, double delta, std::size_t samples);

EpsilonReport classify_epsilon(double epsilon, const FimOptions& options);

/// exp(-N eps^2 / 2 * g_{mu nu} d^mu d^nu).
double overlap_probability(const Matrix& g, std::span<const double> deltas, std::size_t samples, double epsilon);

/// delta = sqrt(2 / (eps^2 N g)); for the normal scale parameter this is sigma / (eps sqrt(N)).
double suggest_delta(double g_diag, std::size_t samples, double target_epsilon);

}  // namespace fisher
