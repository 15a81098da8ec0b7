#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmra::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Documents are
/// read from the named files, or from `in` when a file is omitted or "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gmra::cli
