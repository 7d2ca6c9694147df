#include "nalin/text.hpp"

#include <charconv>
#include <sstream>

#include "nalin/error.hpp"

namespace nalin {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, ptr);
}

std::vector<TextLine> tokenize_lines(std::string_view text) {
  std::vector<TextLine> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    TextLine line{number, {}};
    for (std::string w; tokens >> w;) line.words.push_back(w);
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

void parse_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

unsigned long long parse_uint(std::string_view tok, std::size_t line) {
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
    parse_error(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return v;
}

double parse_double(std::string_view tok, std::size_t line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
    parse_error(line, "expected a number, got '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string> comment_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] != '#') continue;
    const auto body = raw.find_first_not_of(" \t", first + 1);
    out.push_back(body == std::string::npos ? std::string() : raw.substr(body));
  }
  return out;
}

}  // namespace nalin
