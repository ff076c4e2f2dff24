#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kripkelab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a domain value failed (wrong class, bad state, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Text that does not follow a grammar. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An exhaustive procedure would exceed its configured work limit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace kripkelab
