#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace succinct::cli {

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` and end with a `RESULT: ...` line; diagnostics go to `err`.
/// Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
/// 3 resource cap.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace succinct::cli
