#pragma once

#include <stdexcept>
#include <string>

namespace polysos {

/// A symbol required by an evaluation has no bound value.
class MissingBindingError : public std::runtime_error {
 public:
  explicit MissingBindingError(const std::string& symbol)
      : std::runtime_error("no binding for symbol '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

/// Two polynomial bases (monomial sparsity patterns) cannot be reconciled.
class BasisMismatchError : public std::runtime_error {
 public:
  explicit BasisMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// No admissible Gram half basis exists for the requested target.
class NotSosRepresentableError : public std::runtime_error {
 public:
  explicit NotSosRepresentableError(const std::string& what) : std::runtime_error(what) {}
};

/// A constraint row is unsatisfiable for every variable assignment.
class InfeasibleStructureError : public std::runtime_error {
 public:
  explicit InfeasibleStructureError(const std::string& what) : std::runtime_error(what) {}
};

/// Objective or constraints depend nonlinearly on the decision variables.
class NotAffineError : public std::runtime_error {
 public:
  explicit NotAffineError(const std::string& what) : std::runtime_error(what) {}
};

/// Bisection could not locate a feasible bracket endpoint.
class BracketExhaustedError : public std::runtime_error {
 public:
  explicit BracketExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

/// The first iterate of a sequential solve is infeasible.
class InfeasibleStartError : public std::runtime_error {
 public:
  explicit InfeasibleStartError(const std::string& what) : std::runtime_error(what) {}
};

/// Text input (polynomial, problem file, solution file) could not be parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what), line_(-1) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace polysos
