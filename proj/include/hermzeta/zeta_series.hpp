#pragma once

#include <string>
#include <vector>

#include "hermzeta/orthogonal_side.hpp"
#include "hermzeta/quaternion_orders.hpp"

namespace hermzeta {

// Truncated Dirichlet series sum_n c(n) n^{-s}, n <= n_max, with exact
// rational coefficients.  Purely formal: every identity in this library is a
// coefficientwise statement, so no analytic machinery appears anywhere.
struct DirichletCoeffs {
  long n_max = 0;
  std::vector<Rat> coeffs;  // coeffs[n - 1] = c(n)
  std::string label;

  const Rat& c(long n) const;  // bounds-checked, 1 <= n <= n_max
  Rat& c(long n);
};

DirichletCoeffs zs_zero(long n_max, std::string label);
DirichletCoeffs zs_delta(long n_max);  // convolution unit: c(1) = 1, else 0
DirichletCoeffs zs_ones(long n_max);   // c(n) = 1 (the Riemann series)

// Ideal-count coefficients a_K(n) of the Dedekind zeta function of the field.
DirichletCoeffs zs_dedekind(const FieldParams& fp, long n_max);

// Finite set of excluded rational primes (sorted, distinct).
struct PrimeSet {
  std::vector<Int> primes;
};

// Validates primality, sorts and deduplicates.
PrimeSet make_prime_set(std::vector<Int> primes);

// The primes dividing 2 * ell * m — the default excluded set of a
// configuration.
PrimeSet zs_bad_primes(const FieldParams& fp, const Int& ell);

bool ps_coprime(const PrimeSet& p, const Int& n);

// Dirichlet convolution c(n) = sum_{d e = n} a(d) b(e).  Lengths must agree;
// nothing is silently truncated.
DirichletCoeffs zs_convolve(const DirichletCoeffs& a, const DirichletCoeffs& b);

// Zeroes every coefficient whose index shares a factor with the prime set.
// For multiplicative series this is exactly Euler-factor removal.
DirichletCoeffs zs_restrict(const DirichletCoeffs& a, const PrimeSet& p);

// Partial series of one form class (index into classes.reps, must satisfy the
// support condition): c(N) = n(xi; N) for N coprime to the excluded primes,
// 0 otherwise.  Counts through the orbit machinery of the quadratic space.
DirichletCoeffs zs_zeta_xi(const GramData& g, const ClassList& classes,
                           std::size_t class_index, const PrimeSet& p, long n_max);

// All support classes at once, counted on the Hermitian side: one residue
// scan per index N, each matching residue bucketed by the canonical form of
// its attached matrix.  Result is indexed like classes.support_indices.
// Agreement with the per-class orbit counts is part of the test suite.
std::vector<DirichletCoeffs> zs_zeta_xi_all(const ClassList& classes, const PrimeSet& p,
                                            long n_max);

// Hat series: Dedekind coefficients convolved with the class series,
// restricted to indices coprime to the excluded primes.
DirichletCoeffs zs_zeta_hat(const GramData& g, const ClassList& classes,
                            std::size_t class_index, const PrimeSet& p, long n_max);
std::vector<DirichletCoeffs> zs_zeta_hat_all(const ClassList& classes, const PrimeSet& p,
                                             long n_max);

// One verified equation of the hat-series layer.
struct HatCheckRecord {
  std::size_t support_pos;  // position within the support class list
  Int d;
  int identity;  // 1: e(f) * zhat(d) = q(f, d);  2: zhat(d) = ideal count
  Rat lhs, rhs;
  bool pass = false;
};

struct HatCheckReport {
  std::vector<HatCheckRecord> records;

  bool all_pass() const;
};

struct ZetaConfig {
  FieldParams fp;
  Int ell;
  long n_max = 100;
  PrimeSet excluded;  // must contain every prime dividing 2 * ell * m
};

// For every support class i and every d <= n_max coprime to the excluded
// primes, checks both realizations of the hat coefficients:
//   (1) e(f_i) * zhat_i(d) equals the representation number q(f_i, d);
//   (2) zhat_i(d) equals the number of norm-d right ideals in class i.
HatCheckReport zs_verify_hat_identities(const ZetaConfig& cfg);

}  // namespace hermzeta
