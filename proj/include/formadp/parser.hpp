#pragma once

#include <string>

#include "formadp/rule.hpp"

namespace formadp {

/// Input problem text could not be read as a rewrite system.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(col) + ": " + what),
        line(line),
        col(col) {}

  int line;
  int col;
};

/// A rule whose right-hand side introduces variables the left does not bind.
class VarConditionError : public ParseError {
 public:
  VarConditionError(int line, int col, const std::string& what)
      : ParseError(line, col, what) {}
};

struct ParsedProblem {
  Mtrs system;
  bool sorted = false;  // a SIG block was present
};

/// Reads a problem file:
///
///   (VAR x y ...)
///   (SIG (f A B -> C) (a -> A) ...)      optional; absent means one sort o
///   (RULES l -> r  l -> r ...)
///   (STRATEGY INNERMOST)                 optional
///
/// Rules are numbered 1..n in file order and must satisfy the variable
/// condition; under a SIG block every rule must be well-sorted.
ParsedProblem parse_problem(const std::string& text);
ParsedProblem parse_problem_file(const std::string& path);

/// Renders a system back into the file syntax; parse(print(m)) reproduces m.
std::string print_problem(const Mtrs& system);

std::string print_rule(const Rule& r, const Signature& sig);

}  // namespace formadp
