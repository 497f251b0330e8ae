#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsmsim {

/// Raised for bad user input: malformed files, out-of-range parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV parse failure pinned to a 1-based line number (0 when not line-specific).
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : InputError(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace bsmsim
