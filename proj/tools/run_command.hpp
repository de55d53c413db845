// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_TOOLS_RUN_COMMAND_HPP
#define ENRIFACT_TOOLS_RUN_COMMAND_HPP

#include <string>
#include <vector>

namespace enrifact::cli {

/// Runs one command line (argv[0] is the program name). Standard output and
/// error text are returned instead of printed; with --out the report goes to
/// the file and `out` stays empty. Returns the process exit code.
int run_command(const std::vector<std::string>& argv, std::string& out, std::string& err);

}  // namespace enrifact::cli

#endif
