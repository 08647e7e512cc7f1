#ifndef BARYFIT_TOOLS_CLI_HPP
#define BARYFIT_TOOLS_CLI_HPP

#include <string>
#include <vector>

namespace baryfit::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,      ///< bad flags, unreadable or malformed data
    kNumericalError = 3,  ///< pole at a point, all-zero data, failed gradient check
};

/// Parses argv-style arguments (args[0] is the program name) and runs the
/// selected subcommand.
int run(const std::vector<std::string>& args);

}  // namespace baryfit::cli

#endif
