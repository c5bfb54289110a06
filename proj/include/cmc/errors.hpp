#pragma once

#include <stdexcept>
#include <string>

namespace cmc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point lies outside the conformal chart (Poincare disk boundary, or a
// nonpositive conformal denominator).
struct ChartDomainError : Error {
  using Error::Error;
};

// dF drops rank: det g below the admission tolerance.
struct DegenerateImmersionError : Error {
  using Error::Error;
};

// Grid too small for the requested stencil, bad periodic declaration, etc.
struct GridError : Error {
  using Error::Error;
};

// An identity's standing hypothesis fails (non-CMC input, H too close to 0).
struct PreconditionError : Error {
  using Error::Error;
};

// Rotational profile failed to close within the step budget.
struct ProfileClosureError : Error {
  using Error::Error;
};

// Malformed definition document or command-line input.
struct InputError : Error {
  using Error::Error;
};

// Jet arithmetic left the domain of a univariate function (sqrt/log of a
// nonpositive value, reciprocal of zero). The expression layer rewraps it
// with the offending node's source location.
struct JetDomainError : Error {
  using Error::Error;
};

}  // namespace cmc
