#pragma once

#include <stdexcept>
#include <string>

namespace bwreg {

// Base class for all library errors; subcommands map these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or non-finite input data.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A matrix required to be (strictly) positive definite is numerically
// singular, so an inverse power or logarithm cannot be formed.
class NearSingular : public Error {
 public:
  using Error::Error;
};

// An operation that should produce an SPD matrix left the cone
// (extrapolated geodesics, forced solver runs).
class NotSpdResult : public Error {
 public:
  using Error::Error;
};

// The spectral dominance check failed and the run was not forced.
class ExistenceViolation : public Error {
 public:
  using Error::Error;
};

// Covariate sample covariance is singular or too ill-conditioned.
class SingularCovariance : public Error {
 public:
  using Error::Error;
};

// Inputs to the commuting-case closed form do not commute.
class NotCommuting : public Error {
 public:
  using Error::Error;
};

// A common eigendirection has nonpositive weighted root sum; the
// commuting closed form has no SPD solution there.
class NegativeDirection : public Error {
 public:
  using Error::Error;
};

// Pairwise sampling requested on a problem with no negative weights.
class NoNegativeWeights : public Error {
 public:
  using Error::Error;
};

// Laplacian has a zero eigenvalue of multiplicity > 1.
class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

class EmptyGraph : public Error {
 public:
  using Error::Error;
};

class NonPositive : public Error {
 public:
  using Error::Error;
};

}  // namespace bwreg
