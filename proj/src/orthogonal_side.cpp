#include "hermzeta/orthogonal_side.hpp"

namespace hermzeta {

namespace {

Rat rat_of(const Int& n) { return Rat(n); }

// Additive subgroup of Q generated by the given rationals equals Z?
// The group is (g/L)Z with L = lcm of denominators and g the gcd of the
// scaled numerators; it is Z exactly when g == L.
bool rational_span_is_unit(const std::vector<Rat>& vals) {
  Int lcm = 1;
  for (const Rat& v : vals) {
    Int den = v.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  Int g = 0;
  for (const Rat& v : vals) {
    Int scaled = v.get_num() * (lcm / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
  }
  return g == lcm;
}

std::array<Rat, 4> coords(const OrthVector& v) { return {v.x, v.y, v.z, v.w}; }

}  // namespace

bool is_squarefree(const Int& n) {
  Int a = abs(n);
  if (a == 0) return false;
  for (Int p = 2; p * p <= a; ++p) {
    if (a % p != 0) continue;
    a /= p;
    if (a % p == 0) return false;
  }
  return true;
}

GramData make_gram(const FieldParams& fp) {
  GramData g;
  g.fp = fp;
  g.S = MatZ(2, 2);
  if (fp.m % 4 == 3) {
    g.S(0, 0) = 2;
    g.S(0, 1) = 1;
    g.S(1, 0) = 1;
    g.S(1, 1) = (fp.m + 1) / 2;
    g.level_q = fp.m;
  } else {
    g.S(0, 0) = 2;
    g.S(1, 1) = 2 * fp.m;
    g.level_q = 4 * fp.m;
  }
  g.S0 = MatZ(4, 4);
  g.S0(0, 3) = 1;
  g.S0(3, 0) = 1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g.S0(i + 1, j + 1) = -g.S(i, j);
  return g;
}

Rat os_phi0(const GramData& g, const OrthVector& v) {
  return os_phi0_pair(g, v, v);
}

Rat os_phi0_pair(const GramData& g, const OrthVector& a, const OrthVector& b) {
  std::array<Rat, 4> x = coords(a), y = coords(b);
  Rat acc = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (g.S0(i, j) != 0) acc += rat_of(g.S0(i, j)) * x[i] * y[j];
  return acc / 2;
}

Rat qherm_det(const FieldParams& fp, const QHermForm& h) {
  // a*d - N(y + omega z) with N extended to rational coefficients.
  Rat nb = h.y * h.y + rat_of(fp.omega_trace) * h.y * h.z + rat_of(fp.omega_norm) * h.z * h.z;
  return h.a * h.d - nb;
}

OrthVector os_f_omega(const QHermForm& h) { return {h.a, h.y, h.z, h.d}; }

QHermForm os_f_omega_inv(const OrthVector& v) { return {v.x, v.y, v.z, v.w}; }

OrthVector os_f_omega_int(const HermForm& f) {
  return {rat_of(f.a), rat_of(f.b.x), rat_of(f.b.y), rat_of(f.d)};
}

bool os_in_support(const GramData& g, const OrthVector& v, const Int& ell) {
  if (!(os_phi0(g, v) == rat_of(ell))) return false;
  // 2 phi0(v, e_i) for the standard basis: the components of S0 v.
  std::array<Rat, 4> x = coords(v);
  std::vector<Rat> pair_vals;
  for (int i = 0; i < 4; ++i) {
    Rat acc = 0;
    for (int j = 0; j < 4; ++j)
      if (g.S0(i, j) != 0) acc += rat_of(g.S0(i, j)) * x[j];
    pair_vals.push_back(acc);
  }
  return rational_span_is_unit(pair_vals);
}

Int os_n_xi_d_direct(const GramData& g, const HermForm& xi_class, const Int& ell, const Int& d) {
  const FieldParams& fp = g.fp;
  HZ_REQUIRE(d >= 1, Error, "congruence count needs d >= 1");
  HZ_REQUIRE(hf_det(fp, xi_class) == ell, DeterminantMismatch,
             "congruence count needs det(class) = ell");
  HZ_REQUIRE(hf_in_support(fp, xi_class), NotInSupport,
             "congruence count is defined for support classes only");
  const HermForm canon = hf_canonicalize(fp, xi_class);

  // Q := (1/2) q S^{-1} has an integer quadratic form on Z^2 (q00, 2q01, q11
  // integral); the congruence becomes q00 s1^2 + 2q01 s1 s2 + q11 s2^2 = -ell q
  // (mod q d) over the transversal box of Z^2/dSZ^2.
  MatQ sinv = inverse(MatQ(g.S));
  MatQ qmat = sinv;
  for (auto& e : qmat.a) e *= Rat(g.level_q) / 2;
  Rat c00 = qmat(0, 0), c01 = qmat(0, 1) * 2, c11 = qmat(1, 1);
  HZ_REQUIRE(c00.get_den() == 1 && c01.get_den() == 1 && c11.get_den() == 1, Error,
             "level is inconsistent with S (internal)");
  // Plain long arithmetic in the box walk: values stay below ~(2 q d)^2.
  HZ_REQUIRE(d <= 1000000 && ell.fits_slong_p(), Error,
             "congruence box out of supported range");
  const long q00 = c00.get_num().get_si(), q01x2 = c01.get_num().get_si(),
             q11 = c11.get_num().get_si();
  const long dl = d.get_si(), ql = g.level_q.get_si(), lql = Int(ell * g.level_q).get_si();
  const long mod = ql * dl;

  // Transversal of Z^2/dSZ^2 from the diagonal of the Hermite normal form.
  MatZ ds = g.S;
  for (auto& e : ds.a) e *= d;
  MatZ h = hnf(ds);
  HZ_REQUIRE(h.rows == 2 && h(0, 0).fits_slong_p() && h(1, 1).fits_slong_p(), Error,
             "congruence box out of supported range");
  const long b1 = h(0, 0).get_si(), b2 = h(1, 1).get_si();

  Int count = 0;
  for (long s1 = 0; s1 < b1; ++s1) {
    for (long s2 = 0; s2 < b2; ++s2) {
      long val = q00 * s1 * s1 + q01x2 * s1 * s2 + q11 * s2 * s2;
      if ((val + lql) % mod != 0) continue;
      // Attached vector (e, S^{-1} s, d); integrality of S^{-1} s is part of
      // membership in the integral orbit.
      Rat y = sinv(0, 0) * s1 + sinv(0, 1) * s2;
      Rat z = sinv(1, 0) * s1 + sinv(1, 1) * s2;
      if (y.get_den() != 1 || z.get_den() != 1) continue;
      Int e((val + lql) / mod);
      HermForm cand{e, QuadInt(y.get_num(), z.get_num()), d};
      HZ_REQUIRE(hf_det(fp, cand) == ell, Error, "congruence candidate determinant (internal)");
      if (hf_canonicalize(fp, cand) == canon) ++count;
    }
  }
  return count;
}

Int os_n_xi_d(const GramData& g, const HermForm& xi_class, const Int& ell, const Int& d) {
  const FieldParams& fp = g.fp;
  HZ_REQUIRE(hf_det(fp, xi_class) == ell, DeterminantMismatch,
             "congruence count needs det(class) = ell");
  HZ_REQUIRE(hf_in_support(fp, xi_class), NotInSupport,
             "congruence count is defined for support classes only");
  return hf_r_class(fp, xi_class, d);
}

MaximalityVerdict os_check_maximal(const GramData& g, const Int& ell) {
  HZ_REQUIRE(ell >= 1, InvalidParameter, "maximality check needs ell >= 1");
  MaximalityVerdict out;
  out.shortcut_applicable = (g.fp.m % 4 == 3);
  out.shortcut_squarefree = out.shortcut_applicable && is_squarefree(ell * g.fp.m);

  // 2T = diag(-2 ell, -S); M* = (2T)^{-1} Z^3.
  MatZ twoT(3, 3);
  twoT(0, 0) = -2 * ell;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) twoT(i + 1, j + 1) = -g.S(i, j);
  MatQ dual = inverse(MatQ(twoT));

  // Representatives of Z^3/(2T)Z^3 from the Hermite normal form box; each
  // y gives the dual-quotient representative x = (2T)^{-1} y, and
  // T[x] = (1/2) y^t (2T)^{-1} y.
  MatZ h = hnf(twoT);
  for (Int y0 = 0; y0 < h(0, 0); ++y0)
    for (Int y1 = 0; y1 < h(1, 1); ++y1)
      for (Int y2 = 0; y2 < h(2, 2); ++y2) {
        std::array<Rat, 3> y = {Rat(y0), Rat(y1), Rat(y2)};
        std::array<Rat, 3> x = {0, 0, 0};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) x[i] += dual(i, j) * y[j];
        bool in_m = x[0].get_den() == 1 && x[1].get_den() == 1 && x[2].get_den() == 1;
        if (in_m) continue;
        Rat tval = 0;
        for (int i = 0; i < 3; ++i) tval += x[i] * y[i];
        tval /= 2;
        if (tval.get_den() == 1) {
          out.is_maximal = false;
          out.violator = x;
          return out;
        }
      }
  out.is_maximal = true;
  return out;
}

bool os_known_maximal_conditions(const FieldParams& fp, const Int& ell) {
  Int gcd_lm;
  Int m(fp.m);
  mpz_gcd(gcd_lm.get_mpz_t(), ell.get_mpz_t(), m.get_mpz_t());
  if (!(ell >= 1) || !is_squarefree(ell) || gcd_lm != 1) return false;
  if (fp.m % 4 == 3) return true;
  if (fp.m % 4 == 1) return ell % 4 == 1;
  return false;  // m = 2 (mod 4): evidence only
}

}  // namespace hermzeta
