#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmea::cli {

enum ExitStatus : int {
    kSuccess = 0,
    kDataFailure = 1,
    kUsageError = 2,
};

/// Runs one command line (without the program name). Payload goes to `out`
/// only when the command succeeds; diagnostics go to `err`. `in` backs the
/// `-` file argument.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace fmea::cli
