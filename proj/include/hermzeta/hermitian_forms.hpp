#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hermzeta/quad_field.hpp"

namespace hermzeta {

// Positive definite binary Hermitian form over O_K, stored as the matrix
// [[a, b], [conj(b), d]] with a, d rational integers.  Evaluation:
//   f(u, v) = a N(u) + Tr(b u conj(v)) + d N(v),
// and det(f) = a d - N(b) > 0.
struct HermForm {
  Int a;
  QuadInt b;
  Int d;

  bool operator==(const HermForm& o) const = default;
};

// 2x2 matrix over O_K with rows (p q), (r s); acts on forms by A f conj(A)^t.
struct Mat2OK {
  QuadInt p, q, r, s;

  bool operator==(const Mat2OK& o) const = default;
};

QuadInt mat2_det(const FieldParams& fp, const Mat2OK& a);
Mat2OK mat2_mul(const FieldParams& fp, const Mat2OK& x, const Mat2OK& y);

Int hf_det(const FieldParams& fp, const HermForm& f);
bool hf_is_positive_definite(const FieldParams& fp, const HermForm& f);

Int hf_eval(const FieldParams& fp, const HermForm& f, const QuadInt& u, const QuadInt& v);

// The form with matrix A f conj(A)^t (integral for integral inputs).
HermForm hf_transform(const FieldParams& fp, const Mat2OK& a, const HermForm& f);

// Support condition: a Z + d Z + Tr(b O_K) = Z, i.e.
// gcd(a, d, Tr(b), Tr(b*omega)) = 1.  An SL2(O_K)-class invariant.
bool hf_in_support(const FieldParams& fp, const HermForm& f);

// All (u, v) in O_K^2 with f(u, v) = value (value >= 1), deterministic order.
std::vector<std::pair<QuadInt, QuadInt>> hf_value_pairs(const FieldParams& fp, const HermForm& f,
                                                        const Int& value);

// The unique canonical member of the SL2(O_K)-orbit of f: minimal a over the
// orbit, then lexicographically least (N(b), Tr(b), b.x, b.y).  Two forms are
// equivalent iff their canonical members coincide.
HermForm hf_canonicalize(const FieldParams& fp, const HermForm& f);

// Complete search for A in SL2(O_K) with A f conj(A)^t = g: candidate first
// rows are the vectors of f-value g.a, second rows those of f-value g.d,
// filtered by determinant 1 and the cross term.  Returns the first witness in
// the deterministic search order, or nullopt.  Throws DeterminantMismatch if
// det f != det g.
std::optional<Mat2OK> hf_are_equivalent(const FieldParams& fp, const HermForm& f,
                                        const HermForm& g);

// The automorph group E(f) = {A in SL2(O_K) : A f conj(A)^t = f}, e(f) = size.
std::vector<Mat2OK> hf_automorphs(const FieldParams& fp, const HermForm& f);

// All SL2(O_K)-classes of positive definite forms over O_K with determinant
// ell, canonical representatives sorted by key.  h1 counts the classes meeting
// the support condition.
struct ClassList {
  FieldParams fp;
  Int ell;
  std::vector<HermForm> reps;                 // canonical representatives
  std::vector<bool> in_support;               // per representative
  std::vector<Int> automorph_counts;          // e(f_i)
  std::vector<std::size_t> support_indices;   // positions of the support classes

  std::size_t class_count() const { return reps.size(); }   // I_ell
  std::size_t support_count() const { return support_indices.size(); }  // h1
};

// Enumerates candidates with 1 <= a <= ceil(2 sqrt(ell)), b over the residues
// mod a, d = (N(b)+ell)/a >= a; merges into classes and re-runs with the
// a-bound doubled until the class set is stable.  The final representatives
// are verified pairwise inequivalent by the complete search.
ClassList hf_enumerate_classes(const FieldParams& fp, const Int& ell);

// Primitive representations: pairs with <u, v> = O_K and f(u, v) = d.
std::vector<std::pair<QuadInt, QuadInt>> hf_primitive_rep_list(const FieldParams& fp,
                                                               const HermForm& f, const Int& d);
Int hf_primitive_reps(const FieldParams& fp, const HermForm& f, const Int& d);  // p(f, d)

// All representations q(f, d), no primitivity condition.
Int hf_all_reps(const FieldParams& fp, const HermForm& f, const Int& d);

// Residues h mod d with N(h) = -det(f) (mod d) whose associated form
// [[(N(h)+det f)/d, h], [conj(h), d]] is equivalent to f.
std::vector<QuadInt> hf_r_class_members(const FieldParams& fp, const HermForm& f, const Int& d);
Int hf_r_class(const FieldParams& fp, const HermForm& f, const Int& d);  // r(f, d)

// The residue class attached to a primitive representation (u, v) of d: the
// upper-right entry of A f conj(A)^t for any SL2 completion A with bottom row
// (u, v), reduced into the canonical residue box mod d.  Independent of the
// completion choice.
QuadInt hf_phi_map(const FieldParams& fp, const HermForm& f, const QuadInt& u, const QuadInt& v,
                   const Int& d);

}  // namespace hermzeta
