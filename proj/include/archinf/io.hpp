#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace archinf {

inline constexpr int kFormatVersion = 1;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// Writes `contents` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace archinf
