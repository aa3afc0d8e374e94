#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ets::csv {

/// One parsed record per line; cells unquoted. RFC 4180 quoting: a cell is
/// quoted when it contains a comma, a double quote, or a newline; embedded
/// quotes double up.
std::vector<std::vector<std::string>> read_file(const std::filesystem::path& file);
std::vector<std::vector<std::string>> parse(const std::string& text, const std::string& origin);

std::string escape_cell(const std::string& cell);
void write_file(const std::filesystem::path& file,
                const std::vector<std::vector<std::string>>& records);

} // namespace ets::csv
