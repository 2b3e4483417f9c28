#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctxseg::cli {

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, usage errors and failure messages to `err`. Returns the
/// process exit code: 0 on success, 1 on a runtime failure, 2 on a usage
/// error (CLI11 parse errors keep CLI11's own nonzero codes).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctxseg::cli
