#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qxor::cli {

// Runs the qxor command line (args excludes the program name) and returns
// the process exit code: 0 success, 2 usage error, 3 resource budget
// exceeded, 4 malformed input, 1 anything else.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qxor::cli
