#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cspde {

// Shortest round-trip decimal rendering, always with '.' as separator.
std::string format_double(double v);

// Strict, locale-independent parsing. Return false on trailing garbage.
bool parse_double(std::string_view s, double& out);
bool parse_u64(std::string_view s, std::uint64_t& out);

std::string_view trim(std::string_view s);

}  // namespace cspde
