#pragma once

#include <stdexcept>
#include <string>

namespace bsset {

// Malformed or unusable input: bad file syntax, unresolved references,
// invalid group presentations, violated preconditions on user data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parse failure with a source position (1-based).
class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// An enumeration would exceed the configured simplex budget.
class BudgetExceeded : public InputError {
 public:
  BudgetExceeded(int degree, const std::string& count, unsigned long long budget)
      : InputError("simplex budget exceeded in degree " + std::to_string(degree) + ": " + count +
                   " simplices > budget " + std::to_string(budget)),
        degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

// A mathematical hypothesis required by an operation does not hold
// (e.g. a non-simply-connected input, infinite homology, a failed axiom).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bsset
