#pragma once

#include <stdexcept>
#include <string>

namespace greenfield {

// Mathematical domain violations (log of zero, non-prime place, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A caller-supplied precondition does not hold (wrong sizes, lift outside
// the filled Julia set, degree below threshold, torsion input, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured resource cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. Line and column are 1-based; zero means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Something that should be impossible by construction happened.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace greenfield
