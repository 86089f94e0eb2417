#pragma once

#include <ostream>

#include "run_config.hpp"

namespace sympgeo::cli {

enum ExitCode : int { kOk = 0, kAssertion = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

/// Runs a finalized configuration, writing CSV files and run_manifest.txt
/// into cfg.out. Library exceptions propagate to the caller.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace sympgeo::cli
