#pragma once

#include <stdexcept>
#include <string>

namespace minidil {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed polynomial, rational, matrix or spec text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input violates an operation's precondition (maps to CLI exit code 2).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DegreeParity : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SignViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DimensionTooLarge : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotPrimitive : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NoSignChange : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class LengthMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InvalidSpec : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class EmptyClass : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A table's rational-function entry did not divide exactly.
class DivisionFailure : public Error {
 public:
  using Error::Error;
};

// An internal certificate failed its own re-check (maps to CLI exit code 3).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace minidil
