#include "beefi/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "beefi/error.hpp"

namespace beefi {

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0 into 0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("FormatError", "cannot format double");
  return std::string(buf.data(), end);
}

std::string format_truncated(double value, int decimals) {
  // Fixed notation keeps exponents out of the way; std::to_chars in fixed
  // mode without precision is still the shortest round-trip form.
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc{}) throw Error("FormatError", "cannot format double");
  std::string text(buf.data(), end);
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    if (decimals <= 0) return text;
    text += '.';
    dot = text.size() - 1;
  }
  if (decimals <= 0) return text.substr(0, dot);
  const std::size_t have = text.size() - dot - 1;
  if (have < static_cast<std::size_t>(decimals)) {
    text.append(static_cast<std::size_t>(decimals) - have, '0');
  }
  text.resize(dot + 1 + static_cast<std::size_t>(decimals));
  if (text == "-0." + std::string(static_cast<std::size_t>(decimals), '0')) text.erase(0, 1);
  return text;
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw Error("ParseError", "not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_int(std::string_view text) {
  text = trim(text);
  long long value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw Error("ParseError", "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view text) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace beefi
