#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fisher {

/// Uniform 1-D grid of G cells over [lower, upper]; densities live on cell centers.
struct GridSpec {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t num_points = 10;

  double spacing() const { return (upper - lower) / static_cast<double>(num_points); }
  double width() const { return upper - lower; }
  double center(std::size_t i) const {
    return lower + (static_cast<double>(i) + 0.5) * spacing();
  }
  std::vector<double> centers() const;

  bool operator==(const GridSpec&) const = default;
};

/// Validated constructor. Throws std::invalid_argument unless upper > lower and G >= 10.
GridSpec make_grid_spec(double lower, double upper, std::size_t num_points);

/// Generator parameters a sample set was drawn with.
struct Provenance {
  std::vector<std::pair<std::string, double>> theta;
  std::uint64_t seed = 0;
};

/// Finite 1-D observations. N is the number of values.
class SampleSet {
 public:
  SampleSet() = default;
  explicit SampleSet(std::vector<double> values, std::optional<Provenance> provenance = {});

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  double min() const;
  double max() const;

  /// FNV-1a over the raw bytes of the values; used to audit that two consumers saw the same data.
  std::uint64_t content_hash() const;

 private:
  std::vector<double> values_;
  std::optional<Provenance> provenance_;
};

/// Bounding box selection: AUTO is twice the sample range, centered on the midrange.
struct BoxPolicy {
  std::optional<std::pair<double, double>> bounds;

  static BoxPolicy automatic() { return {}; }
  static BoxPolicy fixed(double lower, double upper) { return {std::make_pair(lower, upper)}; }
  bool is_auto() const { return !bounds.has_value(); }
};

GridSpec make_grid(const SampleSet& samples, const BoxPolicy& policy, std::size_t num_points);

/// Grid covering the union of several sample sets (shared stencil grid).
GridSpec make_grid(std::span<const SampleSet> sets, const BoxPolicy& policy, std::size_t num_points);

struct RawHistogram {
  GridSpec grid;
  std::vector<double> density;       // R_i = n_i / (N_inside * h)
  std::vector<std::size_t> counts;   // n_i
  std::size_t inside = 0;
  std::size_t dropped = 0;
};

/// Samples outside the box are dropped and counted. Throws if none land inside.
RawHistogram histogram(const SampleSet& samples, const GridSpec& grid);

enum class DensityMethod { kDeft, kKde, kAnalytic };

std::string to_string(DensityMethod method);

struct DensityEstimate {
  GridSpec grid;
  std::vector<double> values;
  DensityMethod method = DensityMethod::kAnalytic;
  std::optional<double> length_scale;  // DEFT l*
  std::optional<int> alpha;            // DEFT smoothness order
  std::optional<double> bandwidth;     // KDE h
  std::size_t sample_count = 0;
};

/// Midpoint rule: sum(values_i) * h. Throws on length mismatch.
double integrate(std::span<const double> values, const GridSpec& grid);

/// Evaluates pdf at cell centers and renormalizes on the grid.
DensityEstimate analytic_density(const GridSpec& grid, const std::function<double(double)>& pdf);

/// Rescales values so the grid quadrature is exactly one. Throws if the mass is not positive.
void normalize_on_grid(std::vector<double>& values, const GridSpec& grid);

/// KL(q || p) in nats by grid quadrature. Cells with q < cutoff contribute nothing;
/// a cell with q >= cutoff and p < cutoff makes the result +infinity.
double kl_divergence(const DensityEstimate& q, const DensityEstimate& p, double cutoff = 1e-10);

}  // namespace fisher
