#pragma once

#include <stdexcept>
#include <string>

namespace voa {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid AlgebraConfig or malformed input.
struct ConfigError : Error {
  using Error::Error;
};

// An operation would create or need a state of degree > maxDegree.
struct TruncationExceeded : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct InhomogeneousInput : Error {
  using Error::Error;
};

struct NotInJ1 : Error {
  using Error::Error;
};

struct NotConformal : Error {
  using Error::Error;
};

struct NotStrongCFT : Error {
  using Error::Error;
};

struct NotAutomorphism : Error {
  using Error::Error;
};

struct GradingIncompatible : Error {
  using Error::Error;
};

// A construction hypothesis failed; what() names the violated condition.
struct HypothesisFailed : Error {
  using Error::Error;
};

// An internal certainty was violated; what() names the statement that the
// failure would refute. Firing one of these means a bug, not bad input.
struct AssertionFailed : Error {
  using Error::Error;
};

struct ScftV2Violation : AssertionFailed {
  using AssertionFailed::AssertionFailed;
};

struct CounterexampleFound : Error {
  using Error::Error;
};

}  // namespace voa
