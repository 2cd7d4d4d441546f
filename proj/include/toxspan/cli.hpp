#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toxspan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one `toxspan <command> [flags]` invocation and returns its exit code.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Reads a flat `key = value` config file ('#' starts a comment). Keys are
// flag names without the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace toxspan::cli
