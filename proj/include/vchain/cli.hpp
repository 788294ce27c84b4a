#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vchain::cli {

enum class ExitCode : int {
    Success = 0,
    ValidationFailure = 1,
    ParseFailure = 2,
    UsageError = 3,
    IoError = 4,
};

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vchain::cli
