#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lks/errors.hpp"

namespace lks::detail {

struct Line {
  std::size_t number;  // 1-based
  std::vector<std::string_view> tokens;
};

/// Splits into whitespace-separated tokens per line. Blank lines are dropped.
inline std::vector<Line> tokenize_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

inline long long parse_integer(std::string_view token, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

inline void expect_tokens(const Line& line, std::size_t count) {
  if (line.tokens.size() != count) {
    throw ParseError(line.number, "expected " + std::to_string(count) + " fields, got " +
                                      std::to_string(line.tokens.size()));
  }
}

}  // namespace lks::detail
