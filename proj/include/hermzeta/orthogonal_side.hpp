#pragma once

#include <array>
#include <optional>

#include "hermzeta/hermitian_forms.hpp"
#include "hermzeta/zmatrix.hpp"

namespace hermzeta {

// Gram data of the even rank-2 form S attached to the field and of the rank-4
// form S0 with quadratic value phi0[(x,y,z,w)] = x*w - (1/2) S[(y,z)].
// S = diag(2, 2m) when m = 1, 2 (mod 4) and [[2, 1], [1, (m+1)/2]] when
// m = 3 (mod 4); the level q is the smallest positive integer making q*phi0
// integral on the dual of Z^4 (4m resp. m).
struct GramData {
  FieldParams fp;
  MatZ S;       // 2x2, det = 4m or m
  MatZ S0;      // 4x4: antidiagonal 1-blocks in the corners, -S in the middle
  Int level_q;  // 4m or m
};

GramData make_gram(const FieldParams& fp);

// Vector (x, y, z, w) in the rational quadratic space carrying phi0.
struct OrthVector {
  Rat x, y, z, w;

  bool operator==(const OrthVector& o) const = default;
};

// phi0[v] and its symmetric bilinear polarization phi0(a, b) = a^t S0 b / 2.
Rat os_phi0(const GramData& g, const OrthVector& v);
Rat os_phi0_pair(const GramData& g, const OrthVector& a, const OrthVector& b);

// Hermitian matrix [[a, y + omega z], [y + conj(omega) z, d]] with rational
// entries, the domain of the coordinate isometry below.
struct QHermForm {
  Rat a, y, z, d;

  bool operator==(const QHermForm& o) const = default;
};

Rat qherm_det(const FieldParams& fp, const QHermForm& h);

// The isometry (matrix, det) -> (vector, phi0): [[a, y+wz],[.., d]] maps to
// (a, y, z, d) and phi0 of the image equals the determinant.
OrthVector os_f_omega(const QHermForm& h);
QHermForm os_f_omega_inv(const OrthVector& v);
OrthVector os_f_omega_int(const HermForm& f);

// Support membership: phi0[v] = ell and the pairing group 2 phi0(v, Z^4)
// equals Z.  Transport of the Hermitian support condition.
bool os_in_support(const GramData& g, const OrthVector& v, const Int& ell);

// Congruence count n(xi; d): solutions s of  -ell*q = (1/2) q S^{-1}[s]
// (mod q d) in Z^2/dSZ^2 whose attached vector
//   ((el ...), S^{-1} s, d)  lies in the integral orbit of the given class.
// Two routes that must agree:
//   * os_n_xi_d_direct walks the congruence box and classifies each candidate
//     through the canonical Hermitian form of the transported matrix;
//   * os_n_xi_d counts the residue classes of the Hermitian side directly.
// Both throw NotInSupport when the class fails the support condition.
Int os_n_xi_d_direct(const GramData& g, const HermForm& xi_class, const Int& ell, const Int& d);
Int os_n_xi_d(const GramData& g, const HermForm& xi_class, const Int& ell, const Int& d);

// Maximality of M = Z^3 for the rank-3 form T = (1/2) diag(-2 ell, -S):
// scans representatives of M*/M (dual quotient of 2T) for a vector outside M
// with integral T-value; such a vector certifies a proper integral
// overlattice, and its absence certifies maximality.
struct MaximalityVerdict {
  bool is_maximal = false;
  std::optional<std::array<Rat, 3>> violator;  // witness when not maximal
  bool shortcut_applicable = false;            // m = 3 (mod 4): det(2T)/2 = ell*m
  bool shortcut_squarefree = false;            // and that value is square-free
};

MaximalityVerdict os_check_maximal(const GramData& g, const Int& ell);

// Sufficient conditions under which maximality is known a priori:
// m = 3 (mod 4): ell square-free and coprime to m;
// m = 1 (mod 4): additionally ell = 1 (mod 4);
// m = 2 (mod 4): never claimed (the scanner only gathers evidence).
bool os_known_maximal_conditions(const FieldParams& fp, const Int& ell);

// Square-free test by trial division (intended for small determinants).
bool is_squarefree(const Int& n);

}  // namespace hermzeta
