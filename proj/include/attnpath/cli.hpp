#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace attnpath::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

/// Runs one subcommand (`synth`, `features`, `cv`, `scanpath`, `heatmap`,
/// `report`). args[0] is the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the bundled registry and fixture tables.
std::string default_data_dir();

}  // namespace attnpath::cli
