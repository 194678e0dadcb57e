#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gravclock {

// Raised for inputs that violate a documented invariant. The CLI maps this to
// exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scenario text that cannot be tokenized. Carries the 1-based line number.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gravclock
