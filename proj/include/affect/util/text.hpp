#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace affect::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
/// Splits and trims each piece, dropping empty pieces.
std::vector<std::string> split_list(std::string_view s, char sep);
bool is_punct(char c);
bool is_alpha(char c);
bool contains_space(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with_icase(std::string_view s, std::string_view prefix);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace affect::text
