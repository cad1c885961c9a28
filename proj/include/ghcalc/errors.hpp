#pragma once

#include <stdexcept>
#include <string>

namespace ghcalc {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value failed construction-time validation (non-finite endpoint,
/// reversed interval bounds, bad sampling parameters, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// An arithmetic operation produced a non-finite endpoint.
struct OverflowError : Error {
  using Error::Error;
};

/// Paired tuple arguments have different lengths.
struct DimensionError : Error {
  using Error::Error;
};

/// An operation was invoked outside its stated precondition.
struct PreconditionError : Error {
  using Error::Error;
};

/// Domain error while evaluating an expression (division by zero, sqrt of a
/// negative, ...), or an inconsistent piecewise model detected while sampling.
struct EvalError : Error {
  using Error::Error;
};

/// Syntax or semantic error in a function spec, carrying the source position.
class ParseError : public Error {
public:
  ParseError(const std::string& message, int line, int column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace ghcalc
