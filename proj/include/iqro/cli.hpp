#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iqro::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Runs one command line (args excludes the program name). `in` feeds the
// drill answers, one 0-based option index per line.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace iqro::cli
