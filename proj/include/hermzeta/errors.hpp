#pragma once

#include <stdexcept>
#include <string>

namespace hermzeta {

// Base class for all library errors.  Subtypes tell callers *why* an operation
// is impossible, so the CLI can distinguish bad input (exit 2) from failed
// verification (exit 1).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field parameters outside the supported class-number-one list.
struct UnsupportedField : Error {
  using Error::Error;
};

// xgcd requested over a field whose ring of integers is not norm-Euclidean;
// callers must fall back to the Z-module ideal test / generator search.
struct NonEuclideanField : Error {
  using Error::Error;
};

// Equivalence test between forms of different determinant.
struct DeterminantMismatch : Error {
  using Error::Error;
};

// Orbit count requested for a class outside the support sublist.
struct NotInSupport : Error {
  using Error::Error;
};

// A form that should be positive definite is not.
struct NotPositiveDefinite : Error {
  using Error::Error;
};

// Ideal-class comparison between lattices whose orders do not match.
struct IncompatibleOrders : Error {
  using Error::Error;
};

// No basis of the O_K-module yields a positive rational integer determinant.
struct NoProperBasis : Error {
  using Error::Error;
};

// Invalid run parameters (strict validation failed without --experimental).
struct InvalidParameter : Error {
  using Error::Error;
};

// Quotient-size query for a lattice that is not contained in the reference
// order.
struct NotSubLattice : Error {
  using Error::Error;
};

// Ideal enumeration requested at a norm sharing a factor with the declared
// bad primes.
struct BadNorm : Error {
  using Error::Error;
};

// Arithmetic between coefficient vectors truncated at different lengths.
struct LengthMismatch : Error {
  using Error::Error;
};

// A family of operators expected to commute does not.
struct NonCommuting : Error {
  using Error::Error;
};

// An eigenform vanishes at the distinguished identity type, so its
// coefficient series cannot be normalized.
struct VanishingAtIdentity : Error {
  using Error::Error;
};

#define HZ_REQUIRE(cond, ExType, msg) \
  do {                                \
    if (!(cond)) throw ExType(msg);   \
  } while (0)

}  // namespace hermzeta
