#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fisher/deft.hpp"
#include "fisher/fim.hpp"
#include "fisher/ising.hpp"
#include "fisher/kde.hpp"
#include "fisher/manifest.hpp"
#include "fisher/percentiles.hpp"

namespace fisher {

// Option records <-> manifest keys under a prefix, e.g. "deft.alpha".
void put_options(Manifest& m, const std::string& prefix, const DeftOptions& o);
void put_options(Manifest& m, const std::string& prefix, const KdeOptions& o);
void put_options(Manifest& m, const std::string& prefix, const FimOptions& o);
DeftOptions get_deft_options(const Manifest& m, const std::string& prefix);
KdeOptions get_kde_options(const Manifest& m, const std::string& prefix);
FimOptions get_fim_options(const Manifest& m, const std::string& prefix);

/// Header keys shared by every run: experiment, tool_version, timestamp.
void put_run_header(Manifest& m, const std::string& experiment);

/// Seeds of each repetition, split from the master seed by repetition index.
std::vector<std::uint64_t> repetition_seeds(std::uint64_t master, std::size_t repetitions);

// ---------------------------------------------------------------------------
// Normal benchmark: DEFT vs Gaussian KDE on identical samples.

struct NormalComparisonConfig {
  std::vector<double> sigmas{0.5, 1.0, 2.0};
  double mu = 0.0;
  std::size_t samples = 10000;
  double epsilon = 0.05;
  std::size_t repetitions = 20;
  std::uint64_t seed = 20160101;
  DeftOptions deft;
  KdeOptions kde;
  FimOptions deft_fim{FdScheme::kDensityDiff};
  FimOptions kde_fim{FdScheme::kLogDiff};
  std::size_t threads = 0;

  static NormalComparisonConfig paper_scale();
  void validate() const;
  Manifest to_manifest() const;
  static NormalComparisonConfig from_manifest(const Manifest& m);
};

/// Hashes of the samples each estimator consumed for one (sigma, repetition) cell.
struct SampleAudit {
  double sigma = 0.0;
  std::size_t repetition = 0;
  std::uint64_t deft_hash = 0;
  std::uint64_t kde_hash = 0;
};

struct NormalComparisonResult {
  SweepResult deft;  // coords: sigma, delta_sigma, g_analytic; metrics: fi, rel_error
  SweepResult kde;
  std::vector<SampleAudit> audit;
};

/// Relative error is (g_analytic - FI) / g_analytic; delta_sigma = sigma / (epsilon sqrt N).
NormalComparisonResult run_normal_comparison(const NormalComparisonConfig& config);

// ---------------------------------------------------------------------------
// Relative error as a function of epsilon.

struct EpsilonSweepConfig {
  std::vector<double> sigmas{0.5, 1.0, 2.0};
  std::vector<double> epsilons{0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.08, 0.1, 0.12, 0.15, 0.2, 0.3};
  std::size_t samples = 20000;
  std::size_t repetitions = 20;
  std::uint64_t seed = 20160102;
  DeftOptions deft;
  FimOptions fim{FdScheme::kDensityDiff};
  std::size_t threads = 0;

  static EpsilonSweepConfig paper_scale();
  void validate() const;
  Manifest to_manifest() const;
  static EpsilonSweepConfig from_manifest(const Manifest& m);
};

/// coords: sigma, epsilon, delta_sigma; metrics: rel_error, abs_rel_error, fi.
SweepResult run_epsilon_sweep(const EpsilonSweepConfig& config);

// ---------------------------------------------------------------------------
// |relative error| over (N, delta_sigma).

struct HeatmapConfig {
  std::vector<double> sample_counts{1000, 2000, 5000, 10000, 20000, 50000, 100000};
  std::vector<double> deltas{0.03, 0.05, 0.07, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  double sigma = 1.0;
  std::size_t repetitions = 20;
  std::uint64_t seed = 20160103;
  DeftOptions deft;
  FimOptions fim{FdScheme::kDensityDiff};
  double contour_epsilon = 0.1;
  double reference_delta = 0.35;
  std::size_t threads = 0;

  static HeatmapConfig paper_scale();
  void validate() const;
  Manifest to_manifest() const;
  static HeatmapConfig from_manifest(const Manifest& m);
};

/// coords: N, delta_sigma, epsilon, eps_contour_line (sigma / (0.1 sqrt N)), delta_ref_line (0.35);
/// metrics: abs_rel_error, rel_error.
SweepResult run_n_delta_heatmap(const HeatmapConfig& config);

// ---------------------------------------------------------------------------
// Ising temperature sweep: g_TT from energy densities vs heat capacity.

enum class DeltaTPolicy {
  kSuggest,  // suggest_delta on a pilot g_TT = C_h L^2 / T^2 from the center chain
  kFixed,
};

struct IsingSweepConfig {
  double t_min = 0.5;
  double t_max = 4.0;
  std::size_t segments = 39;  // segments + 1 temperatures
  IsingConfig chain;          // T and seed are overwritten per task
  DeltaTPolicy delta_policy = DeltaTPolicy::kSuggest;
  double delta_target_epsilon = 0.1;
  double fixed_delta = 0.0175;
  double delta_min = 0.005;
  double delta_max = 0.25;
  std::size_t repetitions = 3;
  std::uint64_t seed = 20160104;
  DeftOptions deft;
  FimOptions fim{FdScheme::kLogDiff};
  std::size_t threads = 0;

  IsingSweepConfig();
  static IsingSweepConfig paper_scale();
  std::vector<double> temperatures() const;
  void validate() const;
  Manifest to_manifest() const;
  static IsingSweepConfig from_manifest(const Manifest& m);
};

/// coords: T; metrics: g_TT, C_h, ratio (g_TT T^2 / (C_h L^2)), epsilon, delta_T.
/// Ratio and epsilon percentiles are taken over finite values only.
SweepResult run_ising_sweep(const IsingSweepConfig& config);

}  // namespace fisher
