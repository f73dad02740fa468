#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phaseid::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDegenerate = 1;  // analysis ran, but e.g. no external transitions
inline constexpr int kUsage = 2;       // bad arguments or unreadable input

/// Default output directory comes from this variable when --out is absent.
inline constexpr const char* kOutputDirEnv = "PHASEID_OUTPUT_DIR";

int run(int argc, char** argv);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phaseid::cli
