#pragma once

#include <stdexcept>
#include <string>

namespace bdc {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-square input, mismatched sizes, wrong arity of an evaluation point.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An operation was asked for a size beyond what it supports.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. Carries 1-based line/column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what
                       : what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Caller supplied a value outside the operation's domain.
class InputError : public Error {
 public:
  using Error::Error;
};

// 64/128-bit intermediate overflow in exact integer arithmetic.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant; signals a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bdc
