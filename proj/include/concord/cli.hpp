#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace concord::cli {

enum ExitCode { kOk = 0, kInputError = 2, kIndeterminate = 3 };

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`; `in` backs the "-" file name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace concord::cli
