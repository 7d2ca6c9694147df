#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nalin::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// the human-readable summary and diagnostics to `err`. Returns 0 on success,
/// 1 on a domain error and 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nalin::cli
