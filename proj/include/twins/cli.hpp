#pragma once

#include <ostream>

namespace twins::cli {

enum ExitCode : int { ok = 0, semantic_failure = 1, usage_error = 2, budget_exceeded = 3 };

/// Runs the command line tool. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twins::cli
