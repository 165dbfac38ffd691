// SPDX-License-Identifier: Apache-2.0
#pragma once

// The four run verbs behind the command-line tool. Each writes its CSV files
// into an output directory and returns an outcome code.

#include <filesystem>
#include <string>
#include <vector>

#include "hst/config.hpp"

namespace hst {

enum class Outcome : int { Pass = 0, CheckFailed = 2, Inconclusive = 3 };

struct CommandResult {
  Outcome outcome = Outcome::Pass;
  std::string summary;  // human-readable, LF terminated lines
  std::vector<std::filesystem::path> files;
};

CommandResult run_kernels(const RunConfig& cfg, const std::filesystem::path& out_dir, bool force);
CommandResult run_thinness(const RunConfig& cfg, const std::filesystem::path& out_dir, bool force);
CommandResult run_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir, bool force);
/// `u_scale` feeds the fault-injection hook of the transform identity check.
CommandResult run_verify(const RunConfig& cfg, const std::filesystem::path& out_dir, bool force, double u_scale = 1.0);

}  // namespace hst
