#include "fisher/normal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace fisher {

void NormalParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("normal sigma must be > 0 (got " + std::to_string(sigma) + ")");
  }
  if (!std::isfinite(mu)) throw std::invalid_argument("normal mu must be finite");
}

SampleSet normal_sample(const NormalParams& params, std::size_t count, std::uint64_t seed) {
  params.validate();
  if (count == 0) throw std::invalid_argument("normal_sample: N must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(params.mu, params.sigma);
  std::vector<double> values(count);
  for (double& v : values) v = dist(rng);
  return SampleSet(std::move(values), Provenance{{{"mu", params.mu}, {"sigma", params.sigma}}, seed});
}

double normal_pdf(const NormalParams& params, double x) {
  const double z = (x - params.mu) / params.sigma;
  return std::exp(-0.5 * z * z) / (params.sigma * std::sqrt(2.0 * std::numbers::pi));
}

Matrix normal_fi(const NormalParams& params) {
  params.validate();
  const double s2 = params.sigma * params.sigma;
  return Matrix(2, {1.0 / s2, 0.0, 0.0, 2.0 / s2});
}

double normal_kl(const NormalParams& p1, const NormalParams& p2) {
  p1.validate();
  p2.validate();
  const double dm = p1.mu - p2.mu;
  return std::log(p2.sigma / p1.sigma) + (p1.sigma * p1.sigma + dm * dm) / (2.0 * p2.sigma * p2.sigma) - 0.5;
}

SampleSet normal_parametric_sample(const ParameterPoint& theta, std::size_t count, std::uint64_t seed) {
  NormalParams p;
  if (theta.contains("mu")) p.mu = theta.at("mu");
  if (theta.contains("sigma")) p.sigma = theta.at("sigma");
  return normal_sample(p, count, seed);
}

}  // namespace fisher
