#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace latqpa::detail {

/// Shortest decimal text that parses back to exactly `value`.
std::string shortest_repr(double value);

/// Strict parse of a whole token; throws ErrorCode::parse naming `what`.
double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);

std::string_view trim(std::string_view text);

/// Splits on commas, semicolons, tabs and spaces; empty fields are dropped.
std::vector<std::string_view> split_fields(std::string_view line);

}  // namespace latqpa::detail
