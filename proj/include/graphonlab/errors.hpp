#pragma once

#include <stdexcept>
#include <string>

namespace graphonlab {

/// Malformed input file. `line()` is 1-based; 0 when the error is not tied to
/// a line (e.g. premature end of file).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// An exact solver was asked for an instance beyond its enumeration limit.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace graphonlab
