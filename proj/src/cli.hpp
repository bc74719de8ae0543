#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace tripack {

// Runs one command line (arguments without the program name) and returns the
// process exit code: 0 success, 1 a checked claim failed, 2 usage or input
// errors. Reports go to `out`, diagnostics and timing to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline int run_cli(const std::vector<std::string>& args) {
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace tripack
