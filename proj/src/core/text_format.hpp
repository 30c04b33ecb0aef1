#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace henondim {

// Shortest decimal carrying 17 significant digits; round-trips a double.
std::string fmt17(double x);
std::string hex64(std::uint64_t x);

// Strict full-string parse; returns false on trailing garbage.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace henondim
