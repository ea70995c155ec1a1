#pragma once

// Flat key=value run configuration. Keys mirror long flag names without the
// leading dashes; '#' starts a comment line.

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracwave::cli {

// Malformed command line or configuration file. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
};

// Throws UsageError on a line without '=', an empty key, a key that starts
// with '-', or a repeated key.
std::vector<ConfigEntry> parse_config(std::istream& in, std::string_view source);
std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path);

// Removes "--config <path>" / "--config=<path>" from args and splices the
// file's entries in as "--key=value" right after the subcommand name, so
// that flags given on the command line are seen later and win.
std::vector<std::string> expand_config(std::vector<std::string> args);

}  // namespace fracwave::cli
