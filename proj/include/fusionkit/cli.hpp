#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fusionkit::cli {

enum ExitCode : int {
    ok = 0,
    negative = 1,       // verdict false, or a library precondition failed
    usage = 2,
    malformed_file = 3,
    internal_failure = 4,
};

// Runs one fusionkit invocation; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fusionkit::cli
