#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expofuse::cli {

/// Process exit statuses.
enum ExitCode : int
{
  ok = 0,
  usage_error = 1,
  io_error = 2,
  config_error = 3,
};

/// Runs one `expofuse` invocation. args excludes the program name. Requested
/// data goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace expofuse::cli
