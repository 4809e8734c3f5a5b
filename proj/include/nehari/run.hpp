#pragma once

#include <ostream>
#include <string>

#include "nehari/config.hpp"

namespace nehari {

enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_validation = 2, exit_stall = 3 };

/// Structured-text rendering shared by the command reports.
std::string report_text(const SolveReport& r, const std::string& prefix = "");

/// Executes `config.command`, writing artifacts under output_dir with the
/// run label as file prefix. Diagnostics go to `err`, summaries to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nehari
