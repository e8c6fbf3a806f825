#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace termcheck {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (problems, templates, strategies). Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that does not fit its context (unknown symbol, bad index, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  OverflowError() : Error("arithmetic overflow") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace termcheck
