#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lucaskit::cli {

/// Runs one CLI invocation (args exclude the program name) and returns the
/// process exit code: 0 on success, 1 on usage or input errors, 2 on a
/// verification failure or method disagreement.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lucaskit::cli
