#pragma once

#include <stdexcept>
#include <string>

namespace qpflow {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expression text could not be parsed; `offset` is the byte position of the
// first offending character.
struct ParseError : Error {
  std::size_t offset;
  ParseError(std::size_t off, const std::string& what)
      : Error("parse error at byte " + std::to_string(off) + ": " + what), offset(off) {}
};

// Function name outside the entire-function whitelist (exp, sin, cos, sinh, cosh).
struct UnsupportedFunction : Error {
  std::size_t offset;
  UnsupportedFunction(std::size_t off, const std::string& name)
      : Error("unsupported function '" + name + "' at byte " + std::to_string(off)), offset(off) {}
};

// Argument outside an operation's domain (r <= 0, wrong dimension, bad config...).
struct DomainError : Error {
  using Error::Error;
};

// Polar chart is singular at r = 0; raised when |q| <= 1e-9.
struct OriginSingularity : Error {
  using Error::Error;
};

// |z|^2 = q^2 p^2 below threshold; the phase of z is undefined.
struct DegenerateZ : Error {
  using Error::Error;
};

// The FSpec passed to a construction evaluator does not match the
// construction's monomial/Zernike F.
struct SpecMismatch : Error {
  using Error::Error;
};

// q and p span no 2-plane (L^2 below threshold).
struct CollinearState : Error {
  using Error::Error;
};

// Implicit-midpoint Newton iteration hit its cap; `t` is the failing time.
struct NewtonDivergence : Error {
  double t;
  NewtonDivergence(double time, const std::string& what)
      : Error("Newton divergence at t = " + std::to_string(time) + ": " + what), t(time) {}
};

// A polar observable was requested and the trajectory dipped below the
// r threshold; `t` is the first offending time.
struct OriginCrossing : Error {
  double t;
  explicit OriginCrossing(double time)
      : Error("trajectory crossed r < 1e-9 at t = " + std::to_string(time) +
              " while a polar observable was requested"),
        t(time) {}
};

// h_symbolic requires a polynomial FSpec.
struct NotPolynomial : Error {
  using Error::Error;
};

// Poisson bracket of two elements that both carry cos/sin parts leaves the
// representable span.
struct SpanViolation : Error {
  using Error::Error;
};

// An exact division that the construction theorems guarantee has failed;
// indicates an implementation bug, never a data error.
struct DivisibilityFailure : Error {
  using Error::Error;
};

// Zernike construction with gamma1 = gamma2 = 0.
struct DegenerateChoice : Error {
  using Error::Error;
};

// Malformed or schema-violating configuration input.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace qpflow
