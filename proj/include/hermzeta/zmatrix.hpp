#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "hermzeta/errors.hpp"

namespace hermzeta {

using Int = mpz_class;
using Rat = mpq_class;

// Dense integer matrix, row-major.  Rows are the natural generator convention
// throughout this library: a lattice is the Z-span of the rows of its matrix.
struct MatZ {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  MatZ() = default;
  MatZ(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static MatZ identity(std::size_t n);

  bool operator==(const MatZ& o) const = default;
};

MatZ operator*(const MatZ& x, const MatZ& y);
MatZ operator-(const MatZ& x, const MatZ& y);
MatZ transpose(const MatZ& x);

// Exact determinant via Bareiss fraction-free elimination.
Int det(const MatZ& x);

// Row-style Hermite normal form.  Returns the canonical basis of the row span:
// zero rows dropped, pivot columns strictly increasing, pivots positive, and
// entries above each pivot reduced into [0, pivot).  Unique per row lattice.
MatZ hnf(const MatZ& x);

// HNF together with a unimodular transform U such that U * x = H (H padded
// with the zero rows kept, so U is square rows x rows).
struct HnfResult {
  MatZ h;  // full rows x cols echelon (zero rows at the bottom), reduced
  MatZ u;  // unimodular, u * input = h
  std::size_t rank = 0;
};
HnfResult hnf_with_transform(const MatZ& x);

// Canonical representative of v modulo the row span of H (H must be a full
// column-rank HNF, square upper triangular): each coordinate lands in
// [0, H(i,i)).
std::vector<Int> reduce_mod_lattice(std::vector<Int> v, const MatZ& h);

// Dense rational matrix, row-major.
struct MatQ {
  std::size_t rows = 0, cols = 0;
  std::vector<Rat> a;

  MatQ() = default;
  MatQ(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  explicit MatQ(const MatZ& m);

  Rat& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static MatQ identity(std::size_t n);

  bool operator==(const MatQ& o) const = default;
};

MatQ operator*(const MatQ& x, const MatQ& y);
Rat det(const MatQ& x);

// Exact inverse by Gauss-Jordan; throws Error on singular input.
MatQ inverse(const MatQ& x);

// Clear denominators: returns (M, den) with M integral, M/den == x, den > 0
// minimal (den = lcm of entry denominators, content not extracted).
std::pair<MatZ, Int> clear_denominators(const MatQ& x);

}  // namespace hermzeta
