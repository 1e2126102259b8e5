#pragma once

#include <stdexcept>
#include <string>

namespace atld {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: files, formulas, unknown identifiers.
struct InputError : Error {
  explicit InputError(const std::string& msg) : Error(msg) {}
};

struct ParseError : InputError {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : InputError(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

// Enumeration/search budget exhausted; carries how much was attempted.
struct BudgetError : Error {
  long attempted;
  BudgetError(const std::string& msg, long n)
      : Error(msg + " (attempted " + std::to_string(n) + ")"), attempted(n) {}
};

// Knows / informed sets fed to the perfect-information engine.
struct EpistemicModeError : Error {
  explicit EpistemicModeError(const std::string& msg) : Error(msg) {}
};

// Violated internal invariant: always a bug, never a user error.
struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace atld
