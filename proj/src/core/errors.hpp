#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace voa {

// Malformed input record; `line` is 1-based within the offending stream,
// 0 when no single line can be blamed.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Quadrature or search failed to reach its stated tolerance / interval.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Named user (or similar key) absent from loaded data.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace voa
