#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kinalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class UniverseMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A Groebner computation ran past its S-pair reduction cap.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(std::size_t used)
      : Error("groebner budget exhausted after " + std::to_string(used) +
              " S-pair reductions"),
        reductions(used) {}
  std::size_t reductions;
};

/// An exact check that was expected to hold did not.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line_no, std::size_t col_no)
      : Error(format(what, line_no, col_no)), line(line_no), column(col_no) {}
  std::size_t line;
  std::size_t column;

 private:
  static std::string format(const std::string& what, std::size_t l,
                            std::size_t c) {
    if (l == 0 && c == 0) return what;
    return std::to_string(l) + ":" + std::to_string(c) + ": " + what;
  }
};

}  // namespace kinalg
