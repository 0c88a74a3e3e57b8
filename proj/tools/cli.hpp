// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cutseq::cli {

enum ExitCode : int {
    kOk = 0,
    kOtherError = 1,
    kParseError = 2,
    kSingularOrbit = 3,
    kVerificationFailed = 4,
};

/// Runs the command line `args` (without the program name). Results go to
/// `out` (or the --out file), warnings and error JSON to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cutseq::cli
