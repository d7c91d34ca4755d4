#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcdsc {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

// An input file could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

// Every entry was dropped (all weights zero) or the input held no tuples.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// A data vector (or codeword) is not an element of the support set.
class MembershipError : public Error {
 public:
  using Error::Error;
};

// A conditioning value lies outside the relevant marginal support, or an
// informant subset is malformed.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A configured size cap (tuples, bit width, permutations, oracle limits) was hit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A result contradicted one of the library's own guarantees.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace wcdsc
