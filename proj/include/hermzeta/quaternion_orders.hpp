#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hermzeta/hermitian_forms.hpp"
#include "hermzeta/zmatrix.hpp"

namespace hermzeta {

// The definite quaternion algebra K + eps K with eps^2 = -ell and
// eps a = conj(a) eps.  Elements are stored as x + eps y with x, y in O_K;
// the Z-basis used for all lattices is {1, omega, eps, eps*omega}.
struct QuatAlg {
  FieldParams fp;
  Int ell;

  bool operator==(const QuatAlg& o) const { return fp == o.fp && ell == o.ell; }
};

QuatAlg make_quat_alg(const FieldParams& fp, const Int& ell);

struct QuatElem {
  QuadInt x, y;  // x + eps * y

  bool operator==(const QuatElem& o) const = default;
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

QuatElem operator+(const QuatElem& a, const QuatElem& b);
QuatElem operator-(const QuatElem& a, const QuatElem& b);
QuatElem operator-(const QuatElem& a);

QuatElem qa_mul(const QuatAlg& alg, const QuatElem& a, const QuatElem& b);
QuatElem qa_conj(const QuatAlg& alg, const QuatElem& a);
Int qa_nrd(const QuatAlg& alg, const QuatElem& a);   // N(x) + ell N(y)
Int qa_trd(const QuatAlg& alg, const QuatElem& a);   // a + conj(a)

// Element with a positive denominator, num / den.
struct QuatScaled {
  QuatElem num;
  Int den = 1;
};

// Coordinate conversions over the basis {1, omega, eps, eps*omega}.
QuatElem qa_elem_from_coords(const Int& c0, const Int& c1, const Int& c2, const Int& c3);
std::vector<Int> qa_coords(const QuatElem& a);

// Full-rank lattice in B, stored as den^{-1} times the row span of a 4x4
// integer matrix in Hermite normal form with content coprime to den.  The
// representation is canonical: two lattices are equal iff the structs are.
struct QuatLattice {
  MatZ basis;   // 4x4 HNF
  Int den = 1;  // positive

  bool operator==(const QuatLattice& o) const = default;
};

// Canonicalizes a generating set (rows may be redundant; rank must be 4).
QuatLattice qa_lattice_from_rows(const MatZ& rows, const Int& den);
QuatLattice qa_standard_order(const QuatAlg& alg);  // O_K + eps O_K
bool qa_lattice_contains(const QuatAlg& alg, const QuatLattice& l, const QuatScaled& a);

QuatLattice qa_scale_lattice(const QuatLattice& l, const Rat& c);
QuatLattice qa_conj_lattice(const QuatAlg& alg, const QuatLattice& l);
QuatLattice qa_left_mul(const QuatAlg& alg, const QuatScaled& a, const QuatLattice& l);
QuatLattice qa_right_mul(const QuatAlg& alg, const QuatLattice& l, const QuatScaled& a);
QuatLattice qa_mul_lattices(const QuatAlg& alg, const QuatLattice& i, const QuatLattice& j);
QuatLattice qa_add_lattices(const QuatLattice& i, const QuatLattice& j);
QuatLattice qa_intersect(const QuatLattice& i, const QuatLattice& j);

// Colon lattices {x : x I <= J} and {x : I x <= J}, computed by intersecting
// the translates of J by inverses of the basis elements of I.
QuatLattice qa_colon_left(const QuatAlg& alg, const QuatLattice& j, const QuatLattice& i);
QuatLattice qa_colon_right(const QuatAlg& alg, const QuatLattice& j, const QuatLattice& i);

QuatLattice qa_left_order(const QuatAlg& alg, const QuatLattice& i);
QuatLattice qa_right_order(const QuatAlg& alg, const QuatLattice& i);

// Content of the reduced norm form on the lattice: the positive rational
// generating the fractional ideal of all nrd values.
Rat qa_norm_content(const QuatAlg& alg, const QuatLattice& l);

// All lattice elements of exact reduced norm t, lexicographically sorted.
// Complete enumeration of the definite quaternary form by exact
// Fincke-Pohst descent.
std::vector<QuatScaled> qa_elements_of_norm(const QuatAlg& alg, const QuatLattice& l,
                                            const Rat& t);

// The left O_K-module O_K a + O_K (b + eps) attached to an integral positive
// definite Hermitian matrix [[a, b], [conj(b), d]]; always a left ideal of
// the standard order.
QuatLattice qa_latimer_ideal(const QuatAlg& alg, const HermForm& f);

// Ideal norm through a triangular O_K-basis: the determinant of the
// coefficient matrix of x + eps y |-> (x, conj(y)), unit-normalized.  Throws
// NoProperBasis when no unit multiple is a positive rational integer.
Rat qa_latimer_norm(const QuatAlg& alg, const QuatLattice& l);

// #(standard order / I) for sublattices of the standard order.
Int qa_module_index(const QuatAlg& alg, const QuatLattice& l);

// Local principality test: I conj(I) = nrd-content * left order and the
// mirrored identity on the right.
bool qa_is_invertible(const QuatAlg& alg, const QuatLattice& l);

// Generator search for a right ideal: alpha in I with nrd equal to the norm
// content, verified by alpha * O_R(I) = I.
std::optional<QuatScaled> qa_is_principal(const QuatAlg& alg, const QuatLattice& i);

// Right-ideal class equivalence: alpha I = J for some alpha in B^x, searched
// in the colon lattice at the exact norm ratio.  Throws IncompatibleOrders
// when the right orders differ.
bool qa_same_class(const QuatAlg& alg, const QuatLattice& i, const QuatLattice& j);

// Order conjugacy: certified positive by an explicit conjugating element,
// certified negative by an invariant mismatch (unit count, norm theta
// series); throws Error when neither certificate is found.
bool qa_same_type(const QuatAlg& alg, const QuatLattice& o1, const QuatLattice& o2);

// Ideal classes (via the form correspondence), their left orders, conjugacy
// types of those orders, and the class-to-type projection.
struct ClassTypeData {
  QuatAlg alg;
  ClassList forms;                              // the underlying form classes
  std::vector<QuatLattice> ideal_class_reps;    // right ideals, support classes
  std::vector<QuatLattice> left_orders;         // per class representative
  std::vector<QuatLattice> type_reps;           // distinct conjugacy classes
  std::vector<std::size_t> rho_map;             // class index -> type index
  std::vector<Int> unit_orders;                 // e_i = #units of the left order
  std::vector<Int> bad_primes;

  std::size_t h1() const { return ideal_class_reps.size(); }
  std::size_t h2() const { return type_reps.size(); }
};

ClassTypeData qa_class_type_data(const FieldParams& fp, const Int& ell,
                                 const std::vector<Int>& bad_primes);

// All right ideals of the standard order with norm d (coprime to the bad
// primes), each tagged with its class index.  Built as O_K-scalings of
// conjugated two-generator ideals and deduplicated by the canonical form.
struct NormIdeal {
  QuatLattice lattice;
  std::size_t class_index;
};

std::vector<NormIdeal> qa_ideals_of_norm(const ClassTypeData& data, const Int& d);

}  // namespace hermzeta
