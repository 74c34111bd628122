#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rigmatch {

// Malformed input text; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input violating a semantic rule (disconnected query, conflicting
// duplicate edges, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rigmatch
