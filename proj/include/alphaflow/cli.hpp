#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alphaflow::cli {

enum ExitCode : int {
    kOk = 0,
    kFail = 1,               ///< checker failure, Inconclusive stability, runtime geometry failure
    kUsage = 2,              ///< parse or configuration error
    kInadmissible = 3,       ///< 3D metric outside the admissible set
    kMaxTime = 4,
    kDiverging = 5,          ///< Diverging or LeftAdmissibleRegion
    kTooManyVertices = 6,
    kNotConstantCurvature = 7,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit code. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace alphaflow::cli
