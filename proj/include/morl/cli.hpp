#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace morl::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,          // usage, configuration or input error
    kCapExceeded = 2,    // an exact procedure hit its size cap
    kExpectation = 3,    // a declared --expect ordering was violated
};

/// Runs the experiment CLI. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morl::cli
