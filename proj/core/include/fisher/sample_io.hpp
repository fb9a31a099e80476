#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fisher/fim.hpp"
#include "fisher/grid.hpp"

namespace fisher {

/// One observation per line; blank lines and lines starting with '#' are skipped.
SampleSet parse_samples(std::istream& in, const std::string& source_name = "<stream>");
SampleSet read_samples(const std::filesystem::path& path);

/// Writes `# <comment>` lines first, then one value per line at 17 significant digits.
void write_samples(const std::filesystem::path& path, const SampleSet& samples,
                   const std::vector<std::string>& comments = {});

/// CSV with header `x,q`, one row per cell center, 17 significant digits.
void write_density_csv(std::ostream& out, const DensityEstimate& density);
void write_density_csv(const std::filesystem::path& path, const DensityEstimate& density);

/// CSV with header `param_mu,param_nu,g,epsilon,verdict,N,scheme,cutoff`; one row per entry mu <= nu.
void write_fim_csv(std::ostream& out, const FimEstimate& fim);

}  // namespace fisher
