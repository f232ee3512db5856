#pragma once

#include <optional>
#include <vector>

#include "hermzeta/zmatrix.hpp"

namespace hermzeta {

// Imaginary quadratic field K = Q(sqrt(-m)) with maximal order O_K = Z + Z*omega:
//   m = 1,2 (mod 4):  omega = sqrt(-m),         disc = -4m, Tr(omega) = 0, N(omega) = m
//   m = 3   (mod 4):  omega = (1+sqrt(-m))/2,   disc = -m,  Tr(omega) = 1, N(omega) = (1+m)/4
// Only class-number-one m are supported: the norm-Euclidean five {1,2,3,7,11}
// by default, extended by {19,43,67,163} when experimental fields are allowed.
struct FieldParams {
  long m = 1;
  Int disc;
  int omega_trace = 0;
  Int omega_norm;
  bool euclidean = true;
  int unit_count = 2;       // w_K
  bool experimental = false;  // member of the non-Euclidean extension list

  bool operator==(const FieldParams& o) const { return m == o.m; }
};

// Validates m and fills the derived constants.  Throws UnsupportedField for m
// outside the class-number-one lists (or in the extension list without
// allow_experimental).
FieldParams make_field(long m, bool allow_experimental = false);

// Element x + y*omega of O_K.
struct QuadInt {
  Int x, y;

  QuadInt() : x(0), y(0) {}
  QuadInt(Int x_, Int y_) : x(std::move(x_)), y(std::move(y_)) {}
  QuadInt(long x_, long y_) : x(x_), y(y_) {}

  bool operator==(const QuadInt& o) const = default;
  bool is_zero() const { return x == 0 && y == 0; }
};

// Lexicographic order by (x, y); used for canonical choices and map keys.
bool lex_less(const QuadInt& a, const QuadInt& b);

QuadInt operator+(const QuadInt& a, const QuadInt& b);
QuadInt operator-(const QuadInt& a, const QuadInt& b);
QuadInt operator-(const QuadInt& a);

QuadInt qf_mul(const FieldParams& fp, const QuadInt& a, const QuadInt& b);
QuadInt qf_conj(const FieldParams& fp, const QuadInt& a);
Int qf_norm(const FieldParams& fp, const QuadInt& a);
Int qf_trace(const FieldParams& fp, const QuadInt& a);

// Exact division in O_K: a / b if b divides a, nullopt otherwise.
std::optional<QuadInt> qf_div(const FieldParams& fp, const QuadInt& a, const QuadInt& b);

// The w_K units of O_K.
std::vector<QuadInt> qf_units(const FieldParams& fp);

// Canonical associate: the unit multiple of z minimizing
// (x < 0, y < 0, y, x); real elements stay real, zero stays zero.
QuadInt qf_canonical_associate(const FieldParams& fp, const QuadInt& z);

struct XgcdResult {
  QuadInt g, r, s;  // r*u + s*v = g, <g> = <u, v>
};

// Extended gcd via the nearest-integer Euclidean algorithm; g is returned as
// its canonical associate.  Throws NonEuclideanField when fp.euclidean is
// false (callers fall back to qf_ideal_generator, which is HNF-based).
XgcdResult qf_xgcd(const FieldParams& fp, const QuadInt& u, const QuadInt& v);

// True iff u*O_K + v*O_K = O_K, decided by the Z-module HNF of the ideal
// lattice.  Valid for every supported m, Euclidean or not.
bool qf_is_coprime_pair(const FieldParams& fp, const QuadInt& u, const QuadInt& v);

// Generator of <u, v> with Bezout coefficients, found by enumerating ideal
// lattice elements of norm equal to the lattice index (class number one
// guarantees existence).  Works for every supported m.
XgcdResult qf_ideal_generator(const FieldParams& fp, const QuadInt& u, const QuadInt& v);

/// Canonical residue system for O_K / d O_K: {x + y*omega : 0 <= x, y < d},
// ordered row-major by (x, y).
std::vector<QuadInt> qf_residues(const FieldParams& fp, const Int& d);

// All z in O_K with N(z) = n, sorted lexicographically.
std::vector<QuadInt> qf_elements_of_norm(const FieldParams& fp, const Int& n);

/// Norm buckets: bucket[n] lists all z with N(z) = n, for 0 <= n <= n_max.
// One box enumeration; the workhorse behind representation counts.
std::vector<std::vector<QuadInt>> qf_norm_buckets(const FieldParams& fp, long n_max);

// Number of O_K-ideals of norm n (Dirichlet series coefficient of the
// Dedekind zeta function), computed as the element count divided by w_K.
Int qf_dedekind_coeff(const FieldParams& fp, long n);

// Same via the divisor sum of the Kronecker character chi_disc; used as an
// independent cross-check of qf_dedekind_coeff.
Int qf_dedekind_coeff_character(const FieldParams& fp, long n);

}  // namespace hermzeta
