#pragma once

#include <istream>
#include <sstream>
#include <string>

#include "graphonlab/errors.hpp"

namespace graphonlab::detail {

/// Whitespace token stream over a text file that skips '#' comment lines and
/// remembers the line each token came from.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  int line() const { return line_; }

  template <typename T>
  T next(const char* what) {
    std::string tok;
    if (!next_token(tok)) throw ParseError(std::string("unexpected end of file, expected ") + what, line_);
    std::istringstream ss(tok);
    T value{};
    ss >> value;
    if (ss.fail() || !ss.eof()) throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", line_);
    return value;
  }

  /// Tokens remaining on the current line; after reading a full record the
  /// caller uses this to reject trailing garbage.
  bool line_has_more() {
    current_ >> std::ws;
    return !current_.eof();
  }

  /// Advance to the next non-comment line; returns false at EOF.
  bool next_line() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos || raw[first] == '#') continue;
      current_.clear();
      current_.str(raw);
      return true;
    }
    current_.clear();
    current_.str("");
    return false;
  }

  /// True if any non-comment content remains after the current line.
  bool at_end() {
    if (line_has_more()) return false;
    return !next_line();
  }

 private:
  bool next_token(std::string& tok) {
    while (true) {
      if (current_ >> tok) return true;
      if (!next_line()) return false;
    }
  }

  std::istream& in_;
  std::istringstream current_;
  int line_ = 0;
};

}  // namespace graphonlab::detail
