#pragma once

#include <stdexcept>
#include <string>

namespace brs {

// Numerical failures (CLI maps these to exit code 2).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive integration could not reach the requested tolerance.
struct QuadratureFailure : NumericError {
  using NumericError::NumericError;
};

// Root solve exhausted its iteration budget above the residual tolerance.
struct NoConvergence : NumericError {
  using NumericError::NumericError;
};

// Input validation failures (CLI maps these to exit code 1).
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidBudget : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Claimed expected selected sum outside [0, s].
struct InvalidResidual : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct InvalidProbability : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct InvalidFraction : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Exhaustive enumeration requested beyond the supported instance size.
struct TooLarge : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Budget at or above the full expected demand: the count bound is just n.
struct TrivialRegime : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct OutOfRange : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Successive grid refinement still moves the value function too much.
struct GridTooCoarse : NumericError {
  using NumericError::NumericError;
};

// Malformed model/scenario input.
struct ParseError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

}  // namespace brs
