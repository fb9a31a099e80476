#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fisher/manifest.hpp"

namespace fisher::cli {

/// Entry point of `fisherfd`. Returns the process exit code: 0 on success,
/// 2 on a usage error, 1 when the run itself fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes a fully-resolved manifest and writes its outputs plus `manifest.txt`
/// into `directory`. Every subcommand goes through here, so a written manifest
/// replays the run it came from.
void execute(const Manifest& manifest, const std::filesystem::path& directory, std::ostream& out);

}  // namespace fisher::cli
