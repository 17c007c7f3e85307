#pragma once

#include <stdexcept>
#include <string>

#include "ecorelint/common.hpp"

namespace ecorelint {

/// Input text that cannot be read at all (XML well-formedness, bad JSON).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + message),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/// Syntactically readable input that violates a format contract
/// (wrong root namespace, duplicate xmi:id, layout schema violations).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration: unknown keys, unknown rule ids, unreadable files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecorelint
