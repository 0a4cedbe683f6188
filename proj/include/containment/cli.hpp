#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace containment::cli {

/// Exit-code contract of the command-line tool.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageOrParse = 2,
    kInvalidScenario = 3,
};

/// Runs one invocation. `args` excludes the program name, e.g.
/// {"simulate", "--scenario", "s.json", "--out", "t.csv"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace containment::cli
