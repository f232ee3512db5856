#include "hermzeta/hermitian_forms.hpp"

#include <algorithm>
#include <map>

namespace hermzeta {

namespace {

QuadInt scale(const Int& c, const QuadInt& z) { return {c * z.x, c * z.y}; }

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int cdiv(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Bezout coefficients with alpha*u + beta*v = 1 for a coprime pair, via the
// Euclidean algorithm when available and the HNF generator search otherwise.
std::pair<QuadInt, QuadInt> bezout_unit(const FieldParams& fp, const QuadInt& u,
                                        const QuadInt& v) {
  XgcdResult x = fp.euclidean ? qf_xgcd(fp, u, v) : qf_ideal_generator(fp, u, v);
  HZ_REQUIRE(qf_norm(fp, x.g) == 1, Error, "bezout_unit needs a coprime pair");
  QuadInt ginv = qf_conj(fp, x.g);  // inverse of a unit
  return {qf_mul(fp, x.r, ginv), qf_mul(fp, x.s, ginv)};
}

// All s in O_K minimizing N(center + sc * s), sc >= 1; sorted lexicographically.
std::vector<QuadInt> cvp_min(const FieldParams& fp, const QuadInt& center, const Int& sc) {
  // Initial guess: round each coordinate of -center/sc (good enough to seed
  // the search radius; exactness comes from the box scan below).
  auto round_quot = [](const Int& num, const Int& den) {
    return fdiv(2 * num + den, 2 * den);
  };
  QuadInt guess{round_quot(-center.x, sc), round_quot(-center.y, sc)};
  Int n0 = qf_norm(fp, center + scale(sc, guess));
  Int best = n0;
  std::vector<QuadInt> mins;
  //

  // Enumerate all s with N(center + sc*s) <= n0 via per-case coordinate bounds.
  Int t = isqrt(n0) + 1;
  if (fp.omega_trace == 0) {
    // |x| <= sqrt(N), |y| <= sqrt(N/m) for z = x + y*omega.
    Int ty = isqrt(n0 / fp.m) + 1;
    Int ylo = cdiv(-center.y - ty, sc), yhi = fdiv(-center.y + ty, sc);
    Int xlo = cdiv(-center.x - t, sc), xhi = fdiv(-center.x + t, sc);
    for (Int sy = ylo; sy <= yhi; ++sy)
      for (Int sx = xlo; sx <= xhi; ++sx) {
        QuadInt cand{center.x + sc * sx, center.y + sc * sy};
        Int n = qf_norm(fp, cand);
        if (n < best) {
          best = n;
          mins.clear();
        }
        if (n == best) mins.push_back({sx, sy});
      }
  } else {
    // 4N = (2x+y)^2 + m y^2: |y| <= 2 sqrt(N/m), |2x+y| <= 2 sqrt(N).
    Int ty = isqrt(4 * n0 / fp.m) + 1;
    Int ylo = cdiv(-center.y - ty, sc), yhi = fdiv(-center.y + ty, sc);
    for (Int sy = ylo; sy <= yhi; ++sy) {
      Int zy = center.y + sc * sy;
      // |2(center.x + sc*sx) + zy| <= 2t
      Int xlo = cdiv(-2 * center.x - zy - 2 * t, 2 * sc);
      Int xhi = fdiv(-2 * center.x - zy + 2 * t, 2 * sc);
      for (Int sx = xlo; sx <= xhi; ++sx) {
        QuadInt cand{center.x + sc * sx, zy};
        Int n = qf_norm(fp, cand);
        if (n < best) {
          best = n;
          mins.clear();
        }
        if (n == best) mins.push_back({sx, sy});
      }
    }
  }
  std::sort(mins.begin(), mins.end(),
            [](const QuadInt& p, const QuadInt& q) { return lex_less(p, q); });
  return mins;
}

// Classical Gauss reduction: translate b to a coset minimum, swap when d < a.
// Strictly decreases a at every swap, so it terminates; afterwards a <= d and
// N(b) is minimal in b + a O_K.
HermForm gauss_reduce(const FieldParams& fp, HermForm f) {
  const Int ell = hf_det(fp, f);
  for (;;) {
    std::vector<QuadInt> mins = cvp_min(fp, f.b, f.a);
    QuadInt b2 = f.b + scale(f.a, mins.front());
    f.b = b2;
    f.d = (qf_norm(fp, b2) + ell) / f.a;
    if (f.d < f.a) {
      f = HermForm{f.d, -qf_conj(fp, f.b), f.a};
    } else {
      return f;
    }
  }
}

// Lexicographic key order on forms: (a, N(b), Tr(b), b.x, b.y, d).
bool key_less(const FieldParams& fp, const HermForm& f, const HermForm& g) {
  int c = cmp(f.a, g.a);
  if (c != 0) return c < 0;
  c = cmp(qf_norm(fp, f.b), qf_norm(fp, g.b));
  if (c != 0) return c < 0;
  c = cmp(qf_trace(fp, f.b), qf_trace(fp, g.b));
  if (c != 0) return c < 0;
  c = cmp(f.b.x, g.b.x);
  if (c != 0) return c < 0;
  c = cmp(f.b.y, g.b.y);
  if (c != 0) return c < 0;
  return f.d < g.d;
}

}  // namespace

QuadInt mat2_det(const FieldParams& fp, const Mat2OK& a) {
  return qf_mul(fp, a.p, a.s) - qf_mul(fp, a.q, a.r);
}

Mat2OK mat2_mul(const FieldParams& fp, const Mat2OK& x, const Mat2OK& y) {
  return {qf_mul(fp, x.p, y.p) + qf_mul(fp, x.q, y.r),
          qf_mul(fp, x.p, y.q) + qf_mul(fp, x.q, y.s),
          qf_mul(fp, x.r, y.p) + qf_mul(fp, x.s, y.r),
          qf_mul(fp, x.r, y.q) + qf_mul(fp, x.s, y.s)};
}

Int hf_det(const FieldParams& fp, const HermForm& f) { return f.a * f.d - qf_norm(fp, f.b); }

bool hf_is_positive_definite(const FieldParams& fp, const HermForm& f) {
  return f.a > 0 && hf_det(fp, f) > 0;
}

Int hf_eval(const FieldParams& fp, const HermForm& f, const QuadInt& u, const QuadInt& v) {
  return f.a * qf_norm(fp, u) + qf_trace(fp, qf_mul(fp, f.b, qf_mul(fp, u, qf_conj(fp, v)))) +
         f.d * qf_norm(fp, v);
}

HermForm hf_transform(const FieldParams& fp, const Mat2OK& a, const HermForm& f) {
  HermForm g;
  g.a = hf_eval(fp, f, a.p, a.q);
  g.d = hf_eval(fp, f, a.r, a.s);
  // Cross term: row1 * f * conj(row2)^t.
  QuadInt rc = qf_conj(fp, a.r), sc_ = qf_conj(fp, a.s);
  QuadInt cross = scale(f.a, qf_mul(fp, a.p, rc)) + qf_mul(fp, f.b, qf_mul(fp, a.p, sc_)) +
                  qf_mul(fp, qf_conj(fp, f.b), qf_mul(fp, a.q, rc)) +
                  scale(f.d, qf_mul(fp, a.q, sc_));
  g.b = cross;
  return g;
}

bool hf_in_support(const FieldParams& fp, const HermForm& f) {
  const QuadInt omega{0, 1};
  Int g;
  mpz_gcd(g.get_mpz_t(), f.a.get_mpz_t(), f.d.get_mpz_t());
  Int t1 = qf_trace(fp, f.b);
  Int t2 = qf_trace(fp, qf_mul(fp, f.b, omega));
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t1.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t2.get_mpz_t());
  return g == 1;
}

std::vector<std::pair<QuadInt, QuadInt>> hf_value_pairs(const FieldParams& fp, const HermForm& f,
                                                        const Int& value) {
  HZ_REQUIRE(hf_is_positive_definite(fp, f), NotPositiveDefinite,
             "value enumeration needs a positive definite form");
  HZ_REQUIRE(value >= 1, Error, "value enumeration needs value >= 1");
  const Int ell = hf_det(fp, f);
  // a*f(u,v) = N(a u + conj(b) v) + det(f) N(v): walk v, read off w = a u + conj(b) v.
  Int cap = f.a * value;
  HZ_REQUIRE(cap.fits_slong_p(), Error, "value enumeration range overflow");
  auto buckets = qf_norm_buckets(fp, cap.get_si());
  const QuadInt bbar = qf_conj(fp, f.b);
  std::vector<std::pair<QuadInt, QuadInt>> out;
  for (long nv = 0; Int(ell * nv) <= cap; ++nv) {
    Int rest = cap - ell * nv;
    if (!rest.fits_slong_p() || rest.get_si() >= static_cast<long>(buckets.size())) continue;
    for (const QuadInt& v : buckets[nv]) {
      for (const QuadInt& w : buckets[rest.get_si()]) {
        QuadInt z = w - qf_mul(fp, bbar, v);
        if (z.x % f.a != 0 || z.y % f.a != 0) continue;
        QuadInt u{z.x / f.a, z.y / f.a};
        if (u.is_zero() && v.is_zero()) continue;
        if (hf_eval(fp, f, u, v) == value) out.push_back({u, v});
      }
    }
  }
  return out;
}

HermForm hf_canonicalize(const FieldParams& fp, const HermForm& f) {
  HZ_REQUIRE(hf_is_positive_definite(fp, f), NotPositiveDefinite,
             "canonical form needs a positive definite form");
  const Int ell = hf_det(fp, f);
  HermForm red = gauss_reduce(fp, f);
  // Minimal value over primitive vectors; (1,0) has value red.a, so mu <= red.a.
  Int mu = 0;
  std::vector<std::pair<QuadInt, QuadInt>> prims;
  for (Int t = 1; t <= red.a; ++t) {
    for (const auto& [u, v] : hf_value_pairs(fp, red, t))
      if (qf_is_coprime_pair(fp, u, v)) prims.push_back({u, v});
    if (!prims.empty()) {
      mu = t;
      break;
    }
  }
  HZ_REQUIRE(mu > 0, Error, "no primitive vector found (internal)");
  // Orbit slice with a = mu: first rows (u, v), b determined modulo mu*O_K.
  bool have = false;
  HermForm best;
  for (const auto& [u, v] : prims) {
    auto [alpha, beta] = bezout_unit(fp, u, v);
    Mat2OK a{u, v, -beta, alpha};
    HermForm g = hf_transform(fp, a, red);
    for (const QuadInt& s : cvp_min(fp, g.b, mu)) {
      QuadInt b2 = g.b + scale(mu, s);
      HermForm cand{mu, b2, (qf_norm(fp, b2) + ell) / mu};
      if (!have || key_less(fp, cand, best)) {
        best = cand;
        have = true;
      }
    }
  }
  return best;
}

std::optional<Mat2OK> hf_are_equivalent(const FieldParams& fp, const HermForm& f,
                                        const HermForm& g) {
  HZ_REQUIRE(hf_is_positive_definite(fp, f) && hf_is_positive_definite(fp, g),
             NotPositiveDefinite, "equivalence test needs positive definite forms");
  HZ_REQUIRE(hf_det(fp, f) == hf_det(fp, g), DeterminantMismatch,
             "equivalence test needs equal determinants");
  auto rows1 = hf_value_pairs(fp, f, g.a);
  auto rows2 = hf_value_pairs(fp, f, g.d);
  const QuadInt one{1, 0};
  for (const auto& [p, q] : rows1)
    for (const auto& [r, s] : rows2) {
      Mat2OK a{p, q, r, s};
      if (!(mat2_det(fp, a) == one)) continue;
      if (hf_transform(fp, a, f).b == g.b) return a;
    }
  return std::nullopt;
}

std::vector<Mat2OK> hf_automorphs(const FieldParams& fp, const HermForm& f) {
  HZ_REQUIRE(hf_is_positive_definite(fp, f), NotPositiveDefinite,
             "automorph search needs a positive definite form");
  auto rows1 = hf_value_pairs(fp, f, f.a);
  auto rows2 = hf_value_pairs(fp, f, f.d);
  const QuadInt one{1, 0};
  std::vector<Mat2OK> out;
  for (const auto& [p, q] : rows1)
    for (const auto& [r, s] : rows2) {
      Mat2OK a{p, q, r, s};
      if (!(mat2_det(fp, a) == one)) continue;
      if (hf_transform(fp, a, f) == f) out.push_back(a);
    }
  return out;
}

namespace {

// One enumeration sweep: all candidates with 1 <= a <= bound, b over the
// residue box mod a, d = (N(b)+ell)/a integral and >= a, merged by canonical
// form.  Returns the sorted canonical representatives.
std::vector<HermForm> enumerate_sweep(const FieldParams& fp, const Int& ell, const Int& bound) {
  std::vector<HermForm> reps;
  for (Int a = 1; a <= bound; ++a) {
    for (Int x = 0; x < a; ++x)
      for (Int y = 0; y < a; ++y) {
        QuadInt b{x, y};
        Int n = qf_norm(fp, b) + ell;
        if (n % a != 0) continue;
        Int d = n / a;
        if (d < a) continue;
        HermForm cand = hf_canonicalize(fp, HermForm{a, b, d});
        bool known = false;
        for (const HermForm& r : reps)
          if (r == cand) {
            known = true;
            break;
          }
        if (!known) reps.push_back(cand);
      }
  }
  std::sort(reps.begin(), reps.end(),
            [&fp](const HermForm& f, const HermForm& g) { return key_less(fp, f, g); });
  return reps;
}

}  // namespace

ClassList hf_enumerate_classes(const FieldParams& fp, const Int& ell) {
  HZ_REQUIRE(ell >= 1, Error, "class enumeration needs ell >= 1");
  // Initial a-bound ceil(2 sqrt(ell)); doubled until the class set stabilizes.
  Int bound = isqrt(4 * ell);
  if (bound * bound < 4 * ell) ++bound;
  std::vector<HermForm> reps = enumerate_sweep(fp, ell, bound);
  for (;;) {
    std::vector<HermForm> wider = enumerate_sweep(fp, ell, 2 * bound);
    if (wider == reps) break;
    reps = std::move(wider);
    bound *= 2;
  }

  ClassList cl;
  cl.fp = fp;
  cl.ell = ell;
  cl.reps = std::move(reps);
  for (std::size_t i = 0; i < cl.reps.size(); ++i) {
    cl.in_support.push_back(hf_in_support(fp, cl.reps[i]));
    cl.automorph_counts.push_back(Int(hf_automorphs(fp, cl.reps[i]).size()));
    if (cl.in_support.back()) cl.support_indices.push_back(i);
  }
  // Representatives must be pairwise inequivalent; cross-checked by the
  // complete search, independently of the canonical-form merge above.
  for (std::size_t i = 0; i < cl.reps.size(); ++i)
    for (std::size_t j = i + 1; j < cl.reps.size(); ++j)
      HZ_REQUIRE(!hf_are_equivalent(fp, cl.reps[i], cl.reps[j]).has_value(), Error,
                 "enumeration produced equivalent representatives (internal)");
  return cl;
}

std::vector<std::pair<QuadInt, QuadInt>> hf_primitive_rep_list(const FieldParams& fp,
                                                               const HermForm& f, const Int& d) {
  std::vector<std::pair<QuadInt, QuadInt>> out;
  for (const auto& [u, v] : hf_value_pairs(fp, f, d))
    if (qf_is_coprime_pair(fp, u, v)) out.push_back({u, v});
  return out;
}

Int hf_primitive_reps(const FieldParams& fp, const HermForm& f, const Int& d) {
  return Int(hf_primitive_rep_list(fp, f, d).size());
}

Int hf_all_reps(const FieldParams& fp, const HermForm& f, const Int& d) {
  return Int(hf_value_pairs(fp, f, d).size());
}

std::vector<QuadInt> hf_r_class_members(const FieldParams& fp, const HermForm& f, const Int& d) {
  HZ_REQUIRE(d >= 1, Error, "residue count needs d >= 1");
  const Int ell = hf_det(fp, f);
  const HermForm canon = hf_canonicalize(fp, f);
  std::vector<QuadInt> out;
  for (const QuadInt& h : qf_residues(fp, d)) {
    Int n = qf_norm(fp, h) + ell;
    if (n % d != 0) continue;
    HermForm cand{n / d, h, d};
    if (hf_canonicalize(fp, cand) == canon) out.push_back(h);
  }
  return out;
}

Int hf_r_class(const FieldParams& fp, const HermForm& f, const Int& d) {
  return Int(hf_r_class_members(fp, f, d).size());
}

QuadInt hf_phi_map(const FieldParams& fp, const HermForm& f, const QuadInt& u, const QuadInt& v,
                   const Int& d) {
  HZ_REQUIRE(hf_eval(fp, f, u, v) == d, Error, "phi needs a representation of d");
  HZ_REQUIRE(qf_is_coprime_pair(fp, u, v), Error, "phi needs a primitive representation");
  auto [alpha, beta] = bezout_unit(fp, u, v);
  // Completion with bottom row (u, v): det = beta*v + alpha*u = 1.
  Mat2OK a{beta, -alpha, u, v};
  HermForm g = hf_transform(fp, a, f);
  // Canonical residue: both coordinates reduced into [0, d).
  Int x = g.b.x % d, y = g.b.y % d;
  if (x < 0) x += d;
  if (y < 0) y += d;
  return {x, y};
}

}  // namespace hermzeta
