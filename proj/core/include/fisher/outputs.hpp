#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fisher/manifest.hpp"
#include "fisher/percentiles.hpp"

namespace fisher {

/// Header: coordinate names, then `<metric>_median,<metric>_p5,<metric>_p95` per metric, then `n_repetitions`.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
std::string sweep_csv(const SweepResult& result);

/// SVG for one table according to its PlotHint.
std::string plot_sweep(const SweepResult& result);

/// Writes `<name>.csv` and `<name>.svg` per table plus `manifest.txt`; creates the directory.
std::vector<std::filesystem::path> write_outputs(std::span<const SweepResult> results, const Manifest& manifest,
                                                 const std::filesystem::path& directory);

}  // namespace fisher
