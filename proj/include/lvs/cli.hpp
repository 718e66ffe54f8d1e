#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lvs::cli {

/// Exit codes of the `lvs` tool.
inline constexpr int kOk = 0;
inline constexpr int kCriterionFailure = 1;
inline constexpr int kUsageError = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lvs::cli
