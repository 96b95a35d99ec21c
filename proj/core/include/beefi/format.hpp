#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace beefi {

/// Shortest decimal string that parses back to exactly `value`
/// (std::to_chars without precision). This is the only numeric format used
/// in CSV and text artifacts, so golden files are portable.
std::string format_double(double value);

/// Truncates the shortest representation of `value` to `decimals` fractional
/// digits (toward zero). 49.855000000000004 -> "49.85".
std::string format_truncated(double value, int decimals);

/// Strict full-string parse; throws Error("ParseError") on failure.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

/// Splits into lines, stripping a trailing '\r' from each.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace beefi
