#pragma once

#include <stdexcept>
#include <string>

namespace splace {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// system validation
struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct NonPositiveSigma : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidCoupling : Error {
  using Error::Error;
};

// estimation
struct ZeroProcessNoise : Error {
  using Error::Error;
};
struct CholeskyFailure : Error {
  using Error::Error;
};

// bounds
struct MuEqualsOne : Error {
  using Error::Error;
};
struct InfeasibleAlpha : Error {
  using Error::Error;
};

// placement / oracle
struct InvalidBudget : Error {
  using Error::Error;
};
struct DegenerateBudget : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct Infeasible : Error {
  using Error::Error;
};

}  // namespace splace
