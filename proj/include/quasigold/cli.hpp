#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qg::cli {

/// Runs one subcommand. Exit status: 0 success, 1 usage error, 2 data
/// error. All report output goes to `out`, messages and diagnostics to
/// `err`; `color` enables ANSI styling for text-format reports.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             bool color = false);

}  // namespace qg::cli
