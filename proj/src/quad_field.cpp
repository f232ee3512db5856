#include "hermzeta/quad_field.hpp"

#include <algorithm>

namespace hermzeta {

namespace {

constexpr long kEuclidean[] = {1, 2, 3, 7, 11};
constexpr long kExtension[] = {19, 43, 67, 163};

bool contains(const long* list, std::size_t n, long m) {
  for (std::size_t i = 0; i < n; ++i)
    if (list[i] == m) return true;
  return false;
}

// (1+m)/4 for m = 3 (mod 4); the constant term of omega^2 = omega - (1+m)/4.
Int omega_sq_const(const FieldParams& fp) { return Int(1 + fp.m) / 4; }

// Nearest integer to num/den, den > 0.
Int round_nearest(const Int& num, const Int& den) {
  Int q;
  Int two_num = 2 * num + den;
  Int two_den = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), two_num.get_mpz_t(), two_den.get_mpz_t());
  return q;
}

Int round_nearest(const Rat& r) { return round_nearest(r.get_num(), r.get_den()); }

Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

FieldParams make_field(long m, bool allow_experimental) {
  FieldParams fp;
  fp.m = m;
  bool base = contains(kEuclidean, 5, m);
  bool ext = contains(kExtension, 4, m);
  HZ_REQUIRE(base || ext, UnsupportedField,
             "m must lie in {1,2,3,7,11} or, experimentally, {19,43,67,163}");
  HZ_REQUIRE(base || allow_experimental, UnsupportedField,
             "non-Euclidean m requires the experimental flag");
  fp.euclidean = base;
  fp.experimental = ext;
  if (m % 4 == 3) {
    fp.disc = -m;
    fp.omega_trace = 1;
    fp.omega_norm = Int(1 + m) / 4;
  } else {
    fp.disc = -4 * Int(m);
    fp.omega_trace = 0;
    fp.omega_norm = m;
  }
  fp.unit_count = (m == 1) ? 4 : (m == 3) ? 6 : 2;
  return fp;
}

bool lex_less(const QuadInt& a, const QuadInt& b) {
  int c = cmp(a.x, b.x);
  if (c != 0) return c < 0;
  return a.y < b.y;
}

QuadInt operator+(const QuadInt& a, const QuadInt& b) { return {a.x + b.x, a.y + b.y}; }
QuadInt operator-(const QuadInt& a, const QuadInt& b) { return {a.x - b.x, a.y - b.y}; }
QuadInt operator-(const QuadInt& a) { return {-a.x, -a.y}; }

QuadInt qf_mul(const FieldParams& fp, const QuadInt& a, const QuadInt& b) {
  Int yy = a.y * b.y;
  Int cross = a.x * b.y + a.y * b.x;
  if (fp.omega_trace == 0) return {a.x * b.x - fp.m * yy, cross};
  // omega^2 = omega - (1+m)/4
  return {a.x * b.x - omega_sq_const(fp) * yy, cross + yy};
}

QuadInt qf_conj(const FieldParams& fp, const QuadInt& a) {
  if (fp.omega_trace == 0) return {a.x, -a.y};
  return {a.x + a.y, -a.y};
}

Int qf_norm(const FieldParams& fp, const QuadInt& a) {
  if (fp.omega_trace == 0) return a.x * a.x + fp.m * a.y * a.y;
  return a.x * a.x + a.x * a.y + omega_sq_const(fp) * a.y * a.y;
}

Int qf_trace(const FieldParams& fp, const QuadInt& a) { return 2 * a.x + fp.omega_trace * a.y; }

std::optional<QuadInt> qf_div(const FieldParams& fp, const QuadInt& a, const QuadInt& b) {
  HZ_REQUIRE(!b.is_zero(), Error, "division by zero in O_K");
  Int nb = qf_norm(fp, b);
  QuadInt num = qf_mul(fp, a, qf_conj(fp, b));
  if (num.x % nb != 0 || num.y % nb != 0) return std::nullopt;
  return QuadInt{num.x / nb, num.y / nb};
}

std::vector<QuadInt> qf_units(const FieldParams& fp) {
  std::vector<QuadInt> u = {{1, 0}, {-1, 0}};
  if (fp.m == 1) {
    u.push_back({0, 1});
    u.push_back({0, -1});
  } else if (fp.m == 3) {
    // omega = (1+sqrt(-3))/2 is a primitive 6th root of unity.
    u.push_back({0, 1});
    u.push_back({0, -1});
    u.push_back({-1, 1});
    u.push_back({1, -1});
  }
  return u;
}

QuadInt qf_canonical_associate(const FieldParams& fp, const QuadInt& z) {
  if (z.is_zero()) return z;
  QuadInt best = z;
  auto key_less = [](const QuadInt& a, const QuadInt& b) {
    int ka = (a.x < 0 ? 4 : 0) + (a.y < 0 ? 2 : 0);
    int kb = (b.x < 0 ? 4 : 0) + (b.y < 0 ? 2 : 0);
    if (ka != kb) return ka < kb;
    int c = cmp(a.y, b.y);
    if (c != 0) return c < 0;
    return a.x < b.x;
  };
  for (const QuadInt& u : qf_units(fp)) {
    QuadInt cand = qf_mul(fp, u, z);
    if (key_less(cand, best)) best = cand;
  }
  return best;
}

XgcdResult qf_xgcd(const FieldParams& fp, const QuadInt& u, const QuadInt& v) {
  HZ_REQUIRE(fp.euclidean, NonEuclideanField,
             "xgcd needs a norm-Euclidean field; use qf_ideal_generator instead");
  HZ_REQUIRE(!(u.is_zero() && v.is_zero()), Error, "xgcd(0, 0) is undefined");
  // Invariants: r0*u + s0*v = a,  r1*u + s1*v = b.
  QuadInt a = u, b = v;
  QuadInt r0{1, 0}, s0{0, 0}, r1{0, 0}, s1{1, 0};
  while (!b.is_zero()) {
    // Nearest-integer quotient of a/b = a*conj(b)/N(b).
    Int nb = qf_norm(fp, b);
    QuadInt num = qf_mul(fp, a, qf_conj(fp, b));
    QuadInt q;
    if (fp.omega_trace == 0) {
      q.x = round_nearest(num.x, nb);
      q.y = round_nearest(num.y, nb);
    } else {
      // Round the omega coordinate first, then center the rational part:
      // N(dx + dy*omega) = (dx + dy/2)^2 + m*dy^2/4.
      q.y = round_nearest(num.y, nb);
      Rat ry(num.y, nb), rx(num.x, nb);
      ry.canonicalize();
      rx.canonicalize();
      Rat dy = ry - Rat(q.y);
      q.x = round_nearest(rx + dy / 2);
    }
    QuadInt rem = a - qf_mul(fp, q, b);
    QuadInt r2 = r0 - qf_mul(fp, q, r1);
    QuadInt s2 = s0 - qf_mul(fp, q, s1);
    a = b;
    b = rem;
    r0 = r1;
    s0 = s1;
    r1 = r2;
    s1 = s2;
  }
  // Normalize to the canonical associate.
  QuadInt g = qf_canonical_associate(fp, a);
  for (const QuadInt& unit : qf_units(fp)) {
    if (qf_mul(fp, unit, a) == g) return {g, qf_mul(fp, unit, r0), qf_mul(fp, unit, s0)};
  }
  return {a, r0, s0};  // unreachable
}

namespace {

// Rows: coordinates of u, omega*u, v, omega*v.  Row span = ideal <u, v> as a
// Z-lattice in the {1, omega} coordinates.
MatZ ideal_lattice(const FieldParams& fp, const QuadInt& u, const QuadInt& v) {
  const QuadInt omega{0, 1};
  MatZ gen(4, 2);
  const QuadInt rows[4] = {u, qf_mul(fp, omega, u), v, qf_mul(fp, omega, v)};
  for (int i = 0; i < 4; ++i) {
    gen(i, 0) = rows[i].x;
    gen(i, 1) = rows[i].y;
  }
  return gen;
}

}  // namespace

bool qf_is_coprime_pair(const FieldParams& fp, const QuadInt& u, const QuadInt& v) {
  if (u.is_zero() && v.is_zero()) return false;
  MatZ h = hnf(ideal_lattice(fp, u, v));
  if (h.rows != 2) return false;
  return h(0, 0) == 1 && h(1, 1) == 1 && h(0, 1) == 0;
}

XgcdResult qf_ideal_generator(const FieldParams& fp, const QuadInt& u, const QuadInt& v) {
  HZ_REQUIRE(!(u.is_zero() && v.is_zero()), Error, "ideal generator of the zero ideal");
  MatZ gen = ideal_lattice(fp, u, v);
  HnfResult hr = hnf_with_transform(gen);
  HZ_REQUIRE(hr.rank == 2, Error, "ideal lattice is degenerate");
  const Int h00 = hr.h(0, 0), h01 = hr.h(0, 1), h11 = hr.h(1, 1);
  const Int idx = h00 * h11;  // lattice index = norm of any generator

  // Norm form of the lattice basis rows r0 = (h00, h01), r1 = (0, h11):
  // N(a*r0 + b*r1) = A a^2 + B ab + C b^2.
  const QuadInt r0q{h00, h01}, r1q{Int(0), h11};
  const Int A = qf_norm(fp, r0q);
  const Int B = qf_trace(fp, qf_mul(fp, r0q, qf_conj(fp, r1q)));
  const Int C = qf_norm(fp, r1q);
  // a^2 <= 4*C*idx / (4AC - B^2); the denominator is 4*disc-positive.
  const Int denom = 4 * A * C - B * B;
  const Int amax = isqrt(4 * C * idx / denom);
  std::vector<QuadInt> candidates;
  for (Int a = -amax; a <= amax; ++a) {
    // C b^2 + (B a) b + (A a^2 - idx) = 0
    Int disc = B * B * a * a - 4 * C * (A * a * a - idx);
    if (disc < 0) continue;
    Int s = isqrt(disc);
    if (s * s != disc) continue;
    for (int sign = 0; sign < (s == 0 ? 1 : 2); ++sign) {
      Int numer = -B * a + (sign == 0 ? s : -s);
      if (numer % (2 * C) != 0) continue;
      Int b = numer / (2 * C);
      QuadInt z{a * h00, a * h01 + b * h11};
      if (qf_norm(fp, z) == idx) candidates.push_back(z);
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const QuadInt& p, const QuadInt& q) { return lex_less(p, q); });
  for (const QuadInt& z : candidates) {
    // z generates the ideal iff the lattice of z matches (norms already agree,
    // so inclusion suffices; z is in the lattice by construction).
    MatZ hz = hnf(ideal_lattice(fp, z, QuadInt{0, 0}));
    if (hz.rows == 2 && hz(0, 0) == h00 && hz(0, 1) == h01 && hz(1, 1) == h11) {
      // Bezout: solve (row vector) * gen = coords(z) through the HNF transform.
      Int y0 = z.x / h00;
      Int y1 = (z.y - y0 * h01) / h11;
      Int c[4];
      for (int j = 0; j < 4; ++j) c[j] = y0 * hr.u(0, j) + y1 * hr.u(1, j);
      QuadInt r{c[0], c[1]}, s{c[2], c[3]};
      QuadInt g = qf_canonical_associate(fp, z);
      for (const QuadInt& unit : qf_units(fp)) {
        if (qf_mul(fp, unit, z) == g)
          return {g, qf_mul(fp, unit, r), qf_mul(fp, unit, s)};
      }
    }
  }
  throw Error("no principal generator found; field is not class number one?");
}

std::vector<QuadInt> qf_residues(const FieldParams&, const Int& d) {
  HZ_REQUIRE(d >= 1, Error, "residue system needs d >= 1");
  std::vector<QuadInt> out;
  out.reserve(mpz_get_ui(Int(d * d).get_mpz_t()));
  for (Int x = 0; x < d; ++x)
    for (Int y = 0; y < d; ++y) out.push_back({x, y});
  return out;
}

std::vector<std::vector<QuadInt>> qf_norm_buckets(const FieldParams& fp, long n_max) {
  HZ_REQUIRE(n_max >= 0, Error, "norm bound must be non-negative");
  std::vector<std::vector<QuadInt>> buckets(n_max + 1);
  const Int nmax(n_max);
  if (fp.omega_trace == 0) {
    Int ymax = isqrt(nmax / fp.m);
    for (Int y = -ymax; y <= ymax; ++y) {
      Int rest = nmax - fp.m * y * y;
      if (rest < 0) continue;
      Int xmax = isqrt(rest);
      for (Int x = -xmax; x <= xmax; ++x) {
        Int n = x * x + fp.m * y * y;
        if (n <= nmax) buckets[mpz_get_ui(n.get_mpz_t())].push_back({x, y});
      }
    }
  } else {
    // N(x + y*omega) = ((2x+y)^2 + m y^2) / 4
    Int ymax = isqrt(4 * nmax / fp.m);
    for (Int y = -ymax; y <= ymax; ++y) {
      Int rest = 4 * nmax - fp.m * y * y;
      if (rest < 0) continue;
      Int t = isqrt(rest);
      Int xlo = (-t - y - ((-t - y) % 2 + 2) % 2) / 2;  // floor((-t-y)/2); guard below skips undershoot
      // Iterate x with -t <= 2x+y <= t.
      for (Int x = xlo; 2 * x + y <= t; ++x) {
        if (2 * x + y < -t) continue;
        Int n = qf_norm(fp, {x, y});
        if (n <= nmax) buckets[mpz_get_ui(n.get_mpz_t())].push_back({x, y});
      }
    }
  }
  for (auto& b : buckets)
    std::sort(b.begin(), b.end(), [](const QuadInt& p, const QuadInt& q) { return lex_less(p, q); });
  return buckets;
}

std::vector<QuadInt> qf_elements_of_norm(const FieldParams& fp, const Int& n) {
  HZ_REQUIRE(n >= 0, Error, "norm must be non-negative");
  long nl = mpz_get_si(n.get_mpz_t());
  auto buckets = qf_norm_buckets(fp, nl);
  return buckets[nl];
}

Int qf_dedekind_coeff(const FieldParams& fp, long n) {
  HZ_REQUIRE(n >= 1, Error, "Dirichlet coefficient index must be >= 1");
  Int count(qf_elements_of_norm(fp, Int(n)).size());
  HZ_REQUIRE(count % fp.unit_count == 0, Error, "unit action must be free on norm-n elements");
  return count / fp.unit_count;
}

Int qf_dedekind_coeff_character(const FieldParams& fp, long n) {
  HZ_REQUIRE(n >= 1, Error, "Dirichlet coefficient index must be >= 1");
  Int total = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    Int dd(d);
    total += mpz_kronecker(fp.disc.get_mpz_t(), dd.get_mpz_t());
    long e = n / d;
    if (e != d) {
      Int ee(e);
      total += mpz_kronecker(fp.disc.get_mpz_t(), ee.get_mpz_t());
    }
  }
  return total;
}

}  // namespace hermzeta
