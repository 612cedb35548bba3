#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lud {

// Runs the command-line interface against explicit streams so tests can
// capture output. Returns the process exit code: 0 success, 1 diagnostics,
// 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lud
