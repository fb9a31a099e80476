#pragma once

#include <cstdint>

#include "fisher/fim.hpp"
#include "fisher/grid.hpp"

namespace fisher {

struct NormalParams {
  double mu = 0.0;
  double sigma = 1.0;

  void validate() const;
};

/// N deterministic draws; provenance records (mu, sigma) and the seed.
SampleSet normal_sample(const NormalParams& params, std::size_t count, std::uint64_t seed);

double normal_pdf(const NormalParams& params, double x);

/// Exact Fisher information over (mu, sigma): diag(1/sigma^2, 2/sigma^2).
Matrix normal_fi(const NormalParams& params);

/// KL(p1 || p2) = ln(s2/s1) + (s1^2 + (m1-m2)^2) / (2 s2^2) - 1/2.
double normal_kl(const NormalParams& p1, const NormalParams& p2);

/// Sampler over theta = {"mu", "sigma"} for the calibration loop; missing names default to N(0, 1).
SampleSet normal_parametric_sample(const ParameterPoint& theta, std::size_t count, std::uint64_t seed);

}  // namespace fisher
