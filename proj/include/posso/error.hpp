#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posso {

enum class ErrorCode {
  ZeroInverse,
  NonPrimeModulus,
  DimensionMismatch,
  SingularMatrix,
  NotUnitTriangular,
  SingularHankel,
  ExponentOverflow,
  NotZeroDimensional,
  NotShapePosition,
  ClassificationFailure,
  ExhaustedRestarts,
  BudgetExceeded,
  ParseError,
  UnknownVariable,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is
/// stable and is what the CLI maps onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the system-file parser; positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace posso
