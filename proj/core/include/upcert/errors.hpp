#pragma once

#include <stdexcept>
#include <string>

namespace upcert {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Operands live in number fields with no common tower.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// Input text does not conform to the polynomial grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The precision ceiling was reached before a certified answer was found.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed; this indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace upcert
