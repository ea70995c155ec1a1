#include "fracwave/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace fracwave::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(std::string value) {
  if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
      value.back() == value.front()) {
    return value.substr(1, value.size() - 2);
  }
  return value;
}

}  // namespace

std::vector<ConfigEntry> parse_config(std::istream& in, std::string_view source) {
  std::vector<ConfigEntry> entries;
  std::set<std::string> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto where = std::string(source) + ":" + std::to_string(number);
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError(where + ": expected key=value");
    std::string key = trim(std::string_view(text).substr(0, eq));
    std::string value = unquote(trim(std::string_view(text).substr(eq + 1)));
    if (key.empty()) throw UsageError(where + ": empty key");
    if (key.front() == '-') throw UsageError(where + ": keys are written without leading dashes");
    if (!seen.insert(key).second) throw UsageError(where + ": duplicate key '" + key + "'");
    entries.push_back({std::move(key), std::move(value)});
  }
  return entries;
}

std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> remaining;
  std::vector<std::filesystem::path> files;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config requires a path");
      files.emplace_back(args[++i]);
    } else if (a.rfind("--config=", 0) == 0) {
      files.emplace_back(a.substr(9));
    } else {
      remaining.push_back(a);
    }
  }
  if (files.empty()) return remaining;
  if (files.size() > 1) throw UsageError("--config given more than once");

  const auto sub = std::find_if(remaining.begin(), remaining.end(),
                                [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  if (sub == remaining.end()) throw UsageError("--config requires a subcommand");

  std::vector<std::string> injected;
  for (const auto& entry : read_config_file(files.front())) {
    injected.push_back("--" + entry.key + "=" + entry.value);
  }
  remaining.insert(sub + 1, injected.begin(), injected.end());
  return remaining;
}

}  // namespace fracwave::cli
