#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace succinct {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A well-formed input that violates a semantic rule (undeclared
/// proposition, dangling state, overlapping proposition sets, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exploration or simulation exceeded its configured budget. Never
/// converted into a verdict.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// An output letter that is not a transition of the automaton at some state.
class InvalidLetter : public Error {
 public:
  using Error::Error;
};

/// Synthesis found no strategy at any bound up to the cap. Bounded
/// synthesis cannot refute realizability, so this means "unknown".
class Unrealizable : public Error {
 public:
  using Error::Error;
};

/// An internal audit (k-monotonicity, counter soundness, executor safety)
/// failed. These indicate bugs, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace succinct
