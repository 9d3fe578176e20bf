#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace teamdim::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFalse = 1,
    kInputError = 2,
    kBudget = 3,
    kVerifyFail = 4,
};

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teamdim::cli
