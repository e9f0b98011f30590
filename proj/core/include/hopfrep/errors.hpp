#pragma once

#include <stdexcept>
#include <string>

namespace hopfrep {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContextMismatch : Error {
  ContextMismatch() : Error("scalars live in different field contexts") {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct ParamViolation : Error {
  using Error::Error;
};

struct CompletionFailure : Error {
  using Error::Error;
};

struct UnmatchedFactor : Error {
  using Error::Error;
};

struct CoverVerificationFailure : Error {
  using Error::Error;
};

struct IdentityViolation : Error {
  using Error::Error;
};

struct FormulaMismatch : Error {
  using Error::Error;
};

}  // namespace hopfrep
