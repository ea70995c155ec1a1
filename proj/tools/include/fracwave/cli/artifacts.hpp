#pragma once

// Output plumbing shared by the subcommands: provenance headers, number
// formatting and atomic file replacement.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace fracwave::cli {

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text) noexcept;

// 16 lower-case hex digits.
std::string hash_hex(std::uint64_t value);

// "# fracwave <version> <command> <config-hash>", without a trailing newline.
std::string header_line(std::string_view command, std::string_view config_hash);

// 15 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double value);

// Writes to "<path>.tmp" and renames it over `path`. Throws
// std::runtime_error on I/O failure and leaves no partial file behind.
void write_atomic(const std::filesystem::path& path, std::string_view content);

// "dir/run.csv" with suffix ".match.csv" gives "dir/run.match.csv".
std::filesystem::path sibling_path(const std::filesystem::path& path, std::string_view suffix);

}  // namespace fracwave::cli
