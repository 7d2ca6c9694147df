#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nalin {

/// Shortest decimal form that round-trips.
std::string format_double(double v);

/// Non-empty lines of a text file after stripping '#' comments, split on
/// whitespace, with 1-based line numbers kept for error messages.
struct TextLine {
  std::size_t number = 0;
  std::vector<std::string> words;
};
std::vector<TextLine> tokenize_lines(std::string_view text);

/// Throws Error(Parse) with "line N: msg".
[[noreturn]] void parse_error(std::size_t line, const std::string& msg);

unsigned long long parse_uint(std::string_view tok, std::size_t line);
double parse_double(std::string_view tok, std::size_t line);

/// Comment lines ("# ...") of a text file, '#' and leading blanks removed.
std::vector<std::string> comment_lines(std::string_view text);

}  // namespace nalin
