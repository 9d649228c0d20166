#pragma once

#include <stdexcept>
#include <string>

namespace spinecert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed diagram text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Well-formed text describing an inconsistent or non-planar diagram.
class DiagramError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition (normal form unset, unknown id, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InapplicableMove : public Error {
 public:
  using Error::Error;
};

/// The pipeline declined to certify the requested mode.
class Refusal : public Error {
 public:
  using Error::Error;
};

}  // namespace spinecert
