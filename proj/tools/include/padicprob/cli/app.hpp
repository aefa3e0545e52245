#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padicprob::cli {

// Runs the command line `padicprob <args...>` and returns the exit code:
// 0 on success, 2 for malformed input, and one distinct code per library
// error kind otherwise. Reports go to `out` (or --output), the config echo
// and verdict summary to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padicprob::cli
