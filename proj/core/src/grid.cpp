#include "fisher/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

namespace fisher {

std::vector<double> GridSpec::centers() const {
  std::vector<double> out(num_points);
  for (std::size_t i = 0; i < num_points; ++i) out[i] = center(i);
  return out;
}

GridSpec make_grid_spec(double lower, double upper, std::size_t num_points) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(upper > lower)) {
    throw std::invalid_argument("grid bounds must satisfy upper > lower (got [" +
                                std::to_string(lower) + ", " + std::to_string(upper) + "])");
  }
  if (num_points < 10) {
    throw std::invalid_argument("grid needs at least 10 points (got " +
                                std::to_string(num_points) + ")");
  }
  return GridSpec{lower, upper, num_points};
}

SampleSet::SampleSet(std::vector<double> values, std::optional<Provenance> provenance)
    : values_(std::move(values)), provenance_(std::move(provenance)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("sample set contains a non-finite value");
  }
}

double SampleSet::min() const {
  if (values_.empty()) throw std::invalid_argument("empty sample set");
  return *std::min_element(values_.begin(), values_.end());
}

double SampleSet::max() const {
  if (values_.empty()) throw std::invalid_argument("empty sample set");
  return *std::max_element(values_.begin(), values_.end());
}

std::uint64_t SampleSet::content_hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (double v : values_) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

namespace {

GridSpec auto_box(double lo, double hi, std::size_t num_points) {
  if (!(hi > lo)) {
    throw std::invalid_argument("AUTO bounding box has zero width (all samples equal " +
                                std::to_string(lo) + ")");
  }
  const double mid = 0.5 * (lo + hi);
  const double range = hi - lo;
  return make_grid_spec(mid - range, mid + range, num_points);
}

}  // namespace

GridSpec make_grid(const SampleSet& samples, const BoxPolicy& policy, std::size_t num_points) {
  return make_grid(std::span<const SampleSet>(&samples, 1), policy, num_points);
}

GridSpec make_grid(std::span<const SampleSet> sets, const BoxPolicy& policy, std::size_t num_points) {
  if (!policy.is_auto()) {
    return make_grid_spec(policy.bounds->first, policy.bounds->second, num_points);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t total = 0;
  for (const auto& s : sets) {
    if (s.empty()) continue;
    lo = std::min(lo, s.min());
    hi = std::max(hi, s.max());
    total += s.size();
  }
  if (total < 2) throw std::invalid_argument("AUTO bounding box needs at least 2 samples");
  return auto_box(lo, hi, num_points);
}

RawHistogram histogram(const SampleSet& samples, const GridSpec& grid) {
  RawHistogram out;
  out.grid = grid;
  out.counts.assign(grid.num_points, 0);
  const double h = grid.spacing();
  for (double x : samples.values()) {
    if (x < grid.lower || x > grid.upper) {
      ++out.dropped;
      continue;
    }
    auto idx = static_cast<std::size_t>((x - grid.lower) / h);
    idx = std::min(idx, grid.num_points - 1);
    ++out.counts[idx];
    ++out.inside;
  }
  if (out.inside == 0) {
    throw std::invalid_argument("histogram: all " + std::to_string(samples.size()) +
                                " samples fall outside the box [" + std::to_string(grid.lower) +
                                ", " + std::to_string(grid.upper) + "]");
  }
  out.density.resize(grid.num_points);
  const double scale = 1.0 / (static_cast<double>(out.inside) * h);
  for (std::size_t i = 0; i < grid.num_points; ++i) {
    out.density[i] = static_cast<double>(out.counts[i]) * scale;
  }
  return out;
}

std::string to_string(DensityMethod method) {
  switch (method) {
    case DensityMethod::kDeft: return "deft";
    case DensityMethod::kKde: return "kde";
    case DensityMethod::kAnalytic: return "analytic";
  }
  return "unknown";
}

double integrate(std::span<const double> values, const GridSpec& grid) {
  if (values.size() != grid.num_points) {
    throw std::invalid_argument("integrate: " + std::to_string(values.size()) +
                                " values for a grid of " + std::to_string(grid.num_points));
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid.spacing();
}

void normalize_on_grid(std::vector<double>& values, const GridSpec& grid) {
  const double mass = integrate(values, grid);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("cannot normalize a density with mass " + std::to_string(mass));
  }
  for (double& v : values) v /= mass;
}

DensityEstimate analytic_density(const GridSpec& grid, const std::function<double(double)>& pdf) {
  DensityEstimate out;
  out.grid = grid;
  out.method = DensityMethod::kAnalytic;
  out.values.resize(grid.num_points);
  for (std::size_t i = 0; i < grid.num_points; ++i) out.values[i] = std::max(0.0, pdf(grid.center(i)));
  normalize_on_grid(out.values, grid);
  return out;
}

double kl_divergence(const DensityEstimate& q, const DensityEstimate& p, double cutoff) {
  if (!(q.grid == p.grid)) throw std::invalid_argument("kl_divergence: densities live on different grids");
  double sum = 0.0;
  for (std::size_t i = 0; i < q.grid.num_points; ++i) {
    const double qi = q.values[i];
    const double pi = p.values[i];
    if (qi < cutoff) continue;
    if (pi < cutoff) return std::numeric_limits<double>::infinity();
    sum += qi * std::log(qi / pi);
  }
  return sum * q.grid.spacing();
}

}  // namespace fisher
