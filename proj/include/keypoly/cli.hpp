#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace keypoly::cli {

/// Exit codes of the command-line front end.
enum Exit : int { ok = 0, check_failed = 1, usage = 2 };

/// Runs one command. `args` excludes the program name. Output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace keypoly::cli
