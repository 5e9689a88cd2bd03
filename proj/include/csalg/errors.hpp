#pragma once

#include <stdexcept>
#include <string>

namespace csalg {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that violates a mathematical precondition (bad conductor, non-unit
// determinant, wrong order, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConductorMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

// Bracket table that cannot be made skew-symmetric.
class Cs4Inconsistency : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col, const std::string& file = "")
      : Error((file.empty() ? "line " + std::to_string(line) + ", col " + std::to_string(col)
                            : file + ":" + std::to_string(line) + ":" + std::to_string(col)) +
              ": " + msg),
        message_(msg),
        line_(line),
        col_(col) {}
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  std::string message_;
  int line_;
  int col_;
};

}  // namespace csalg
