#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace syllogist {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or construction would exceed a configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Generalized intersection of the empty set, which is undefined.
class EmptyIntersection : public Error {
 public:
  EmptyIntersection() : Error("intersection of the empty set is undefined") {}
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// DNF conversion produced more disjuncts than allowed.
class SizeBlowup : public Error {
 public:
  using Error::Error;
};

/// Finite(.) has no counterpart among normalized literals.
class FiniteUnsupported : public Error {
 public:
  FiniteUnsupported() : Error("Finite(.) cannot be normalized") {}
};

/// Raised by enumeration entry points when the candidate cap is hit.
class SearchAborted : public Error {
 public:
  using Error::Error;
};

}  // namespace syllogist
