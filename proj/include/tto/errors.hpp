#pragma once

#include <stdexcept>
#include <string>

namespace tto {

enum class ErrorKind {
  PoleAtPoint,
  DomainMismatch,
  NotADivisor,
  DivisionByZeroFunction,
  RealPole,
  PoleOnBoundary,
  NotIntegrable,
  NotBounded,
  DegenerateSpace,
  FormulaMismatch,
  NotInUpperHalfPlane,
  InvalidParams,
  RankMismatch,
  NotAnalytic,
  ZeroSymbol,
  WitnessInvalid,
  IdentityFailure,
  InvalidInner,
};

const char* to_string(ErrorKind k);

// A violated mathematical precondition or a failed internal consistency check.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed user input (JSON specs, CLI arguments).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tto
