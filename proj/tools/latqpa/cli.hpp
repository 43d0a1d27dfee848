#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latqpa::cli {

/// Runs one `latqpa` subcommand. `args` excludes the program name. Data goes
/// to `out` (or the --out file), diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latqpa::cli
