#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hermzeta/quaternion_orders.hpp"
#include "hermzeta/zeta_series.hpp"

namespace hermzeta {

// ---------------------------------------------------------------------------
// Exact real quadratic numbers
// ---------------------------------------------------------------------------

// An element a + b*sqrt(d) of Q or of a real quadratic field, with d
// square-free.  Stored normalized: b == 0 forces d == 0, a square factor of d
// is absorbed into b, and a perfect-square d collapses to a rational.  A
// negative radicand is rejected (the operators these values come from are
// self-adjoint, so their eigenvalues are real).
struct QuadExtVal {
  Rat a, b;
  Int d;

  QuadExtVal() : a(0), b(0), d(0) {}
  QuadExtVal(const Rat& r) : a(r), b(0), d(0) {}  // NOLINT: implicit by design
  QuadExtVal(const Rat& a_, const Rat& b_, const Int& d_);

  bool is_rational() const { return b == 0; }
};

bool operator==(const QuadExtVal& x, const QuadExtVal& y);
bool operator!=(const QuadExtVal& x, const QuadExtVal& y);
QuadExtVal operator+(const QuadExtVal& x, const QuadExtVal& y);
QuadExtVal operator-(const QuadExtVal& x, const QuadExtVal& y);
QuadExtVal operator*(const QuadExtVal& x, const QuadExtVal& y);
QuadExtVal operator/(const QuadExtVal& x, const QuadExtVal& y);

// Galois conjugate a - b*sqrt(d).
QuadExtVal qe_conj(const QuadExtVal& x);

// "a", "a/b", or "a/b+c/e*sqrt(d)" (minus signs folded into the numerators).
std::string qe_to_string(const QuadExtVal& x);

// ---------------------------------------------------------------------------
// Brandt matrices
// ---------------------------------------------------------------------------

// The degree-d Hecke operator on the ideal-class set: entry (i, j) counts the
// alpha in J_i * conj(J_j) / N(J_j) whose reduced norm is d * N(J_i) / N(J_j),
// divided by the unit order e_j.  Equivalently (and the reason every entry is
// a non-negative integer): the number of sub-ideals of J_i of norm d * N(J_i)
// lying in class j.  Row 0 recovers the per-class ideal counts of norm d.
struct BrandtMatrix {
  Int d;
  std::vector<std::vector<Rat>> entries;  // h1 x h1; integral, kept as Rat
};

// d must be coprime to the bad primes of the class data (throws BadNorm).
BrandtMatrix hk_brandt(const ClassTypeData& data, const Int& d);

// Push a Brandt matrix down to the type set: C[w][w'] = sum over classes j of
// type w' of B[i][j], for any class i of type w.  The sum is independent of
// the chosen i (checked; a violation throws Error).
std::vector<std::vector<Int>> hk_compress(const ClassTypeData& data,
                                          const BrandtMatrix& b);

// ---------------------------------------------------------------------------
// Eigenforms of the compressed family
// ---------------------------------------------------------------------------

// A simultaneous eigenvector of the compressed Brandt family, as a class
// function on types.  Components are scaled to a primitive integral vector
// (rational forms) or a denominator-free one with positive leading entry.
struct Eigenform {
  std::vector<QuadExtVal> values;             // indexed by type
  std::vector<QuadExtVal> prime_eigenvalues;  // aligned with EigenSystem::primes
};

struct EigenSystem {
  std::vector<Int> primes;      // the refinement primes actually used
  std::vector<Rat> weights;     // W_w = sum of 1/e_i over the classes of type w
  std::vector<Eigenform> forms; // forms[0] is the constant (Perron) form
};

// Splits the type space into one-dimensional joint eigenspaces by refining
// invariant subspaces along the supplied primes (each must be coprime to the
// bad primes).  The constant vector is split off first, so forms[0] is always
// the all-ones form with eigenvalue p + 1 at every prime.  Eigenvalues are
// kept exact, in Q or a real quadratic extension.  Commutation of the family
// is checked up front (NonCommuting); a joint subspace that would need an
// algebraic eigenvalue of degree >= 3 throws Error.
EigenSystem hk_eigensystem(const ClassTypeData& data, const std::vector<Int>& primes);

// ---------------------------------------------------------------------------
// Coefficient series and the trace identity
// ---------------------------------------------------------------------------

// Like DirichletCoeffs but with exact quadratic-extension coefficients, since
// a non-constant eigenform can have irrational Hecke eigenvalues.  When every
// coefficient is rational this carries the same information as the rational
// series type.
struct AlgebraicCoeffs {
  long n_max = 0;
  std::vector<QuadExtVal> coeffs;  // coeffs[n - 1] = c(n)
  std::string label;

  const QuadExtVal& c(long n) const;
};

// Per-class ideal counts #{right ideals of norm d in class i} for every
// d <= n_max coprime to the bad primes; rows at excluded d are left empty.
std::vector<std::vector<Int>> hk_ideal_counts(const ClassTypeData& data, long n_max);

// Coefficients c(d) of the eigenform's series: c(d) is the eigenvalue of the
// degree-d operator on the form, computed exactly as a Rayleigh quotient of
// the compressed matrix (indices sharing a factor with the bad primes get 0).
// Normalization divides by the value at the identity type; a form vanishing
// there throws VanishingAtIdentity.
AlgebraicCoeffs hk_L_coeffs(const ClassTypeData& data, const EigenSystem& es,
                            std::size_t form_index, long n_max);

// One instance of the main identity: for eigenform f_j and index d,
//   sum_i f_j(type of class i) * zhat_i(d)  ==  f_j(1) * c_j(d),
// with zhat the convolution-side hat series and c_j the Brandt-side
// eigenvalue series.  Both sides exact in Q(sqrt(D)).
struct SubMainRecord {
  std::size_t form_index = 0;
  Int d;
  QuadExtVal lhs, rhs;
  bool pass = false;
};

// Aggregation of the hat series over a type fiber against the ideal counts:
//   sum_{i : type(i) = w} zhat_i(d)  ==  #{ideals of norm d with class of type w}.
struct FiberRecord {
  std::size_t type_index = 0;
  Int d;
  Rat lhs, rhs;
  bool pass = false;
};

struct SubMainReport {
  EigenSystem eigen;
  std::vector<SubMainRecord> records;
  std::vector<FiberRecord> fiber_records;

  bool all_pass() const;
};

// Runs the identity for every eigenform and every d <= n_max coprime to the
// bad primes, plus the fiber aggregation for every type.  Only configurations
// with m != 2 whose standard order is certified maximal are accepted
// (InvalidParameter otherwise).  The eigensystem uses the good primes <= 20.
SubMainReport hk_verify_sub_main(const ClassTypeData& data, long n_max);

}  // namespace hermzeta
