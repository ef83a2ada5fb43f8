#pragma once

#include <stdexcept>
#include <string>

namespace caqr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input (bad index, malformed instruction, bad config).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// QASM syntax or semantic error, with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A dependency graph that had to be acyclic contained a cycle.
class CycleError : public Error {
 public:
  using Error::Error;
};

}  // namespace caqr
