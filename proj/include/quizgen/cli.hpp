#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quizgen {

// Full command dispatcher (args exclude the program name). Returns the
// process exit code: 0 success, 1 domain error, 2 usage error. All output
// goes to the supplied streams so tests can run commands in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace quizgen
