#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cotangent {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A homomorphism matrix does not send source relations into target relations.
class IllFormedHom : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions or bases do not line up.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A Beck module (or one of its transition maps) violates its axioms.
class InvalidModule : public Error {
 public:
  using Error::Error;
};

/// A descriptor does not define a valid object of its category.
class InvalidObject : public Error {
 public:
  using Error::Error;
};

class NotAHomomorphism : public Error {
 public:
  using Error::Error;
};

/// Raised by the epimorphism checker when its input is not an epimorphism.
class NotAnEpi : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class DegreeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cotangent
