#pragma once

#include <stdexcept>
#include <string>

namespace ttap {

// Base for everything the library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

// Input exceeds the configured desk-scale bound for an exhaustive routine.
struct ResourceError : Error {
  using Error::Error;
};

// Malformed text input. Line and column are 1-based; column 0 means "whole line".
struct ParseError : Error {
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(column) +
              ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

// External solver missing, crashed, or produced output we cannot read.
struct SolverError : Error {
  using Error::Error;
};

// A structural theorem the code relies on was contradicted by the data.
// Seeing this means a bug (or invalid input that slipped past validation).
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace ttap
