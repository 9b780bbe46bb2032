#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sskg {

enum class ErrorKind {
  Malformed,
  NotSourceFree,
  MissingSquare,
  SquareNotBijective,
  CubeConditionFailed,
  NotComposable,
  AxiomViolated,
  ConstructionFailed,
  TooManyVertices,
  EmptyResult,
  NotInLattice,
  UnsupportedDescriptor,
  InvalidQuery,
  HypothesisUnverified,
  BudgetExceeded,
  SyntaxError,
  DuplicateId,
  DanglingReference,
};

std::string_view to_string(ErrorKind kind);

/// Every failure surfaced by the library. The kind is stable and is what the
/// CLI reports; the message names the offending object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by action validation; carries the number of the violated axiom
/// (0 denotes the group-action law itself).
class AxiomError : public Error {
 public:
  AxiomError(int axiom, const std::string& witness)
      : Error(ErrorKind::AxiomViolated,
              "axiom " + std::to_string(axiom) + " violated: " + witness),
        axiom_(axiom),
        witness_(witness) {}

  int axiom() const noexcept { return axiom_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  int axiom_;
  std::string witness_;
};

/// Parse diagnostics carry a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, int line, int column, const std::string& message)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sskg
