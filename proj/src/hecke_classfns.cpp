#include "hermzeta/hecke_classfns.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <utility>

#include "hermzeta/errors.hpp"

namespace hermzeta {

// ---------------------------------------------------------------------------
// QuadExtVal
// ---------------------------------------------------------------------------

namespace {

// Splits n > 0 as core * square with core square-free.
std::pair<Int, Int> square_free_core(Int n) {
  Int core = 1, root = 1;
  for (Int p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) root *= p;
    if (e % 2) core *= p;
  }
  core *= n;  // leftover prime
  return {core, root};
}

}  // namespace

QuadExtVal::QuadExtVal(const Rat& a_, const Rat& b_, const Int& d_) : a(a_), b(b_), d(d_) {
  if (b == 0) {
    d = 0;
    return;
  }
  HZ_REQUIRE(d > 0, Error, "quadratic eigenvalue with a non-positive radicand");
  auto [core, root] = square_free_core(d);
  b *= root;
  d = core;
  if (d == 1) {  // the radicand was a perfect square
    a += b;
    b = 0;
    d = 0;
  }
}

bool operator==(const QuadExtVal& x, const QuadExtVal& y) {
  return x.a == y.a && x.b == y.b && x.d == y.d;
}

bool operator!=(const QuadExtVal& x, const QuadExtVal& y) { return !(x == y); }

namespace {

// Common radicand of two normalized values; mixing distinct fields is not
// meaningful for the operators handled here.
Int joint_radicand(const QuadExtVal& x, const QuadExtVal& y) {
  if (x.d == 0) return y.d;
  if (y.d == 0) return x.d;
  HZ_REQUIRE(x.d == y.d, Error, "arithmetic between distinct quadratic fields");
  return x.d;
}

}  // namespace

QuadExtVal operator+(const QuadExtVal& x, const QuadExtVal& y) {
  Int d = joint_radicand(x, y);
  if (d == 0) return QuadExtVal(x.a + y.a);
  return QuadExtVal(x.a + y.a, x.b + y.b, d);
}

QuadExtVal operator-(const QuadExtVal& x, const QuadExtVal& y) {
  Int d = joint_radicand(x, y);
  if (d == 0) return QuadExtVal(x.a - y.a);
  return QuadExtVal(x.a - y.a, x.b - y.b, d);
}

QuadExtVal operator*(const QuadExtVal& x, const QuadExtVal& y) {
  Int d = joint_radicand(x, y);
  if (d == 0) return QuadExtVal(x.a * y.a);
  return QuadExtVal(x.a * y.a + x.b * y.b * Rat(d), x.a * y.b + x.b * y.a, d);
}

QuadExtVal operator/(const QuadExtVal& x, const QuadExtVal& y) {
  Int d = joint_radicand(x, y);
  Rat nrm = y.a * y.a - y.b * y.b * Rat(d);
  HZ_REQUIRE(nrm != 0, Error, "division by zero in a quadratic field");
  if (d == 0) return QuadExtVal(x.a / y.a);
  // x * conj(y) / N(y)
  return QuadExtVal((x.a * y.a - x.b * y.b * Rat(d)) / nrm, (x.b * y.a - x.a * y.b) / nrm, d);
}

QuadExtVal qe_conj(const QuadExtVal& x) {
  if (x.d == 0) return x;
  return QuadExtVal(x.a, -x.b, x.d);
}

namespace {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

std::string qe_to_string(const QuadExtVal& x) {
  if (x.d == 0) return rat_str(x.a);
  std::ostringstream os;
  if (x.a != 0) os << x.a << (x.b > 0 ? "+" : "");
  os << x.b << "*sqrt(" << x.d << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Brandt matrices
// ---------------------------------------------------------------------------

BrandtMatrix hk_brandt(const ClassTypeData& data, const Int& d) {
  HZ_REQUIRE(d > 0, BadNorm, "Brandt matrix index must be positive");
  for (const Int& p : data.bad_primes)
    HZ_REQUIRE(d % p != 0, BadNorm, "Brandt matrix index shares a factor with the bad primes");

  const QuatAlg& alg = data.alg;
  std::size_t h1 = data.h1();
  std::vector<QuatLattice> inv;
  std::vector<Rat> norms;
  inv.reserve(h1);
  norms.reserve(h1);
  for (const QuatLattice& j : data.ideal_class_reps) {
    QuatLattice cj = qa_conj_lattice(alg, j);
    inv.push_back(qa_scale_lattice(cj, Rat(1) / qa_norm_content(alg, j)));
    norms.push_back(qa_latimer_norm(alg, cj));
  }

  BrandtMatrix b;
  b.d = d;
  b.entries.assign(h1, std::vector<Rat>(h1, Rat(0)));
  for (std::size_t i = 0; i < h1; ++i) {
    for (std::size_t j = 0; j < h1; ++j) {
      // The coset set J_j^{-1} J_i of the left-ideal picture transports,
      // through conjugation (an anti-automorphism), to J_i * conj(J_j)/N_j.
      QuatLattice prod = qa_mul_lattices(alg, data.ideal_class_reps[i], inv[j]);
      Rat target = Rat(d) * norms[i] / norms[j];
      std::size_t count = qa_elements_of_norm(alg, prod, target).size();
      b.entries[i][j] = Rat(Int(count)) / Rat(data.unit_orders[j]);
    }
  }
  return b;
}

std::vector<std::vector<Int>> hk_compress(const ClassTypeData& data, const BrandtMatrix& b) {
  std::size_t h1 = data.h1(), h2 = data.h2();
  HZ_REQUIRE(b.entries.size() == h1, Error, "Brandt matrix size does not match the class data");
  std::vector<std::vector<Int>> c(h2, std::vector<Int>(h2, Int(0)));
  std::vector<bool> seen(h2, false);
  for (std::size_t i = 0; i < h1; ++i) {
    std::size_t w = data.rho_map[i];
    std::vector<Rat> row(h2, Rat(0));
    for (std::size_t j = 0; j < h1; ++j) row[data.rho_map[j]] += b.entries[i][j];
    if (!seen[w]) {
      for (std::size_t w2 = 0; w2 < h2; ++w2) {
        HZ_REQUIRE(row[w2].get_den() == 1, Error, "compressed Brandt entry is not an integer");
        c[w][w2] = row[w2].get_num();
      }
      seen[w] = true;
    } else {
      for (std::size_t w2 = 0; w2 < h2; ++w2)
        HZ_REQUIRE(row[w2] == Rat(c[w][w2]), Error,
                   "compressed Brandt entry depends on the class chosen within a type");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over Q (small dense matrices)
// ---------------------------------------------------------------------------

namespace {

using QMat = std::vector<std::vector<Rat>>;
using QVec = std::vector<Rat>;

QMat to_qmat(const std::vector<std::vector<Int>>& m) {
  QMat out(m.size(), QVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = Rat(m[i][j]);
  return out;
}

QMat mat_mul(const QMat& x, const QMat& y) {
  std::size_t n = x.size();
  QMat out(n, QVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  return out;
}

// Columns of the matrix applied to an ambient vector.
QVec mat_apply(const QMat& m, const QVec& v) {
  std::size_t n = m.size();
  QVec out(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += m[i][j] * v[j];
  return out;
}

// Row-reduces a copy of m and returns a basis of its null space.
std::vector<QVec> kernel_basis(QMat m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(cols, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Expresses each target as a combination of the basis vectors (columns of a
// full-rank system); throws if some target leaves their span.
std::vector<QVec> solve_in_span(const std::vector<QVec>& basis, const std::vector<QVec>& targets,
                                const char* what) {
  std::size_t n = basis.empty() ? 0 : basis[0].size(), k = basis.size(), t = targets.size();
  QMat aug(n, QVec(k + t, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
    for (std::size_t j = 0; j < t; ++j) aug[i][k + j] = targets[j][i];
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_row(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t sel = r;
    while (sel < n && aug[sel][c] == 0) ++sel;
    HZ_REQUIRE(sel < n, Error, "subspace basis is linearly dependent");
    std::swap(aug[sel], aug[r]);
    Rat inv = Rat(1) / aug[r][c];
    for (std::size_t j = c; j < k + t; ++j) aug[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rat f = aug[i][c];
      for (std::size_t j = c; j < k + t; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_row[c] = r;
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < t; ++j) HZ_REQUIRE(aug[i][k + j] == 0, Error, what);
  std::vector<QVec> coords(t, QVec(k));
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t c = 0; c < k; ++c) coords[j][c] = aug[pivot_row[c]][k + j];
  return coords;
}

// Matrix of the action of m on the span of the basis, in basis coordinates.
QMat restrict_to(const QMat& m, const std::vector<QVec>& basis) {
  std::vector<QVec> images;
  images.reserve(basis.size());
  for (const QVec& v : basis) images.push_back(mat_apply(m, v));
  std::vector<QVec> coords = solve_in_span(
      basis, images, "operator does not preserve an invariant subspace of the refinement");
  std::size_t k = basis.size();
  QMat r(k, QVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r[i][j] = coords[j][i];
  return r;
}

// Characteristic polynomial, ascending coefficients, by Faddeev-LeVerrier.
QVec char_poly(const QMat& m) {
  std::size_t n = m.size();
  QVec coeff(n + 1, Rat(0));
  coeff[n] = 1;
  QMat mk(n, QVec(n, Rat(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    QMat t = mk;
    for (std::size_t i = 0; i < n; ++i) t[i][i] += coeff[n - k + 1];
    mk = mat_mul(m, t);
    Rat tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += mk[i][i];
    coeff[n - k] = -tr / Rat(Int((long)k));
  }
  return coeff;
}

Rat poly_eval(const QVec& p, const Rat& x) {
  Rat v(0);
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// Divides p by (x - r), assuming r is a root.
QVec poly_deflate(const QVec& p, const Rat& r) {
  QVec q(p.size() - 1);
  Rat carry = p.back();
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + carry * r;
  }
  return q;
}

// All rational roots with multiplicity, plus the root-free remaining factor.
// The polynomial is monic and divides a monic integer polynomial, so every
// rational root is an integer; the Perron row-sum bound caps its size.
std::pair<std::vector<std::pair<Rat, std::size_t>>, QVec> split_rational_roots(QVec p,
                                                                               const Int& bound) {
  std::vector<std::pair<Rat, std::size_t>> roots;
  for (Int r = -bound; r <= bound; ++r) {
    std::size_t mult = 0;
    while (p.size() > 1 && poly_eval(p, Rat(r)) == 0) {
      p = poly_deflate(p, Rat(r));
      ++mult;
    }
    if (mult) roots.emplace_back(Rat(r), mult);
  }
  return {std::move(roots), std::move(p)};
}

// Evaluates a polynomial at a matrix argument (Horner).
QMat poly_at_matrix(const QVec& p, const QMat& m) {
  std::size_t n = m.size();
  QMat acc(n, QVec(n, Rat(0)));
  bool leading = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (!leading) acc = mat_mul(acc, m);
    for (std::size_t k = 0; k < n; ++k) acc[k][k] += p[i];
    leading = false;
  }
  return acc;
}

QVec ambient_from_coords(const std::vector<QVec>& basis, const QVec& coords) {
  std::size_t n = basis[0].size();
  QVec out(n, Rat(0));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) out[i] += coords[j] * basis[j][i];
  return out;
}

bool is_scalar(const QMat& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j ? (m[i][j] != m[0][0]) : (m[i][j] != 0)) return false;
    }
  return true;
}

// Exact eigenvalue of m on an eigenvector with entries in Q(sqrt(D)); checks
// the eigen-equation on every coordinate.
QuadExtVal rayleigh(const QMat& m, const std::vector<QuadExtVal>& v, const char* what) {
  std::size_t n = m.size();
  std::vector<QuadExtVal> image(n);
  for (std::size_t i = 0; i < n; ++i) {
    QuadExtVal acc;
    for (std::size_t j = 0; j < n; ++j) acc = acc + QuadExtVal(m[i][j]) * v[j];
    image[i] = acc;
  }
  std::size_t k = 0;
  while (k < n && v[k] == QuadExtVal()) ++k;
  HZ_REQUIRE(k < n, Error, "zero vector has no eigenvalue");
  QuadExtVal lambda = image[k] / v[k];
  for (std::size_t i = 0; i < n; ++i) HZ_REQUIRE(image[i] == lambda * v[i], Error, what);
  return lambda;
}

// Scales a quadratic-extension vector to clear denominators, divide out the
// common integer content, and make the leading nonzero component positive.
void normalize_form(std::vector<QuadExtVal>& v) {
  Int den_lcm = 1;
  for (const QuadExtVal& x : v) {
    den_lcm = lcm(den_lcm, Int(x.a.get_den()));
    den_lcm = lcm(den_lcm, Int(x.b.get_den()));
  }
  Int content = 0;
  for (QuadExtVal& x : v) {
    x.a *= Rat(den_lcm);
    x.b *= Rat(den_lcm);
    content = gcd(content, Int(x.a.get_num()));
    content = gcd(content, Int(x.b.get_num()));
  }
  if (content == 0) return;
  int sign = 0;
  for (const QuadExtVal& x : v) {
    if (x.a != 0) sign = x.a > 0 ? 1 : -1;
    else if (x.b != 0) sign = x.b > 0 ? 1 : -1;
    if (sign) break;
  }
  Rat scale = Rat(Int(sign)) / Rat(content);
  for (QuadExtVal& x : v) {
    x.a *= scale;
    x.b *= scale;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Eigensystem
// ---------------------------------------------------------------------------

EigenSystem hk_eigensystem(const ClassTypeData& data, const std::vector<Int>& primes) {
  std::size_t h2 = data.h2();
  EigenSystem es;
  es.primes = primes;
  es.weights.assign(h2, Rat(0));
  for (std::size_t i = 0; i < data.h1(); ++i)
    es.weights[data.rho_map[i]] += Rat(1) / Rat(data.unit_orders[i]);

  std::vector<QMat> ops;
  ops.reserve(primes.size());
  for (const Int& p : primes) ops.push_back(to_qmat(hk_compress(data, hk_brandt(data, p))));

  // The family must commute and be self-adjoint for the type weights; both
  // back the diagonalizability and reality assumptions of the refinement.
  for (std::size_t s = 0; s < ops.size(); ++s) {
    for (std::size_t w = 0; w < h2; ++w)
      for (std::size_t w2 = 0; w2 < h2; ++w2)
        HZ_REQUIRE(es.weights[w] * ops[s][w][w2] == es.weights[w2] * ops[s][w2][w], Error,
                   "compressed operator is not self-adjoint for the type weights");
    for (std::size_t t = s + 1; t < ops.size(); ++t)
      HZ_REQUIRE(mat_mul(ops[s], ops[t]) == mat_mul(ops[t], ops[s]), NonCommuting,
                 "compressed Brandt operators at two indices do not commute");
  }

  // The constant vector is a common eigenvector (constant row sums); its
  // weighted orthogonal complement is preserved by self-adjointness.  Seeding
  // the queue with both pins the constant form to position 0.
  std::vector<std::vector<QuadExtVal>> found_values;
  std::vector<QVec> found_rational;
  struct Pending {
    std::vector<QVec> basis;
    std::size_t next;
  };
  std::deque<Pending> queue;
  {
    QVec ones(h2, Rat(1));
    queue.push_back({{ones}, 0});
    if (h2 > 1) {
      std::vector<QVec> comp;
      for (std::size_t k = 1; k < h2; ++k) {
        QVec v(h2, Rat(0));
        v[0] = -es.weights[k] / es.weights[0];
        v[k] = 1;
        comp.push_back(std::move(v));
      }
      queue.push_back({std::move(comp), 0});
    }
  }

  auto finalize_rational = [&](const QVec& v) {
    std::vector<QuadExtVal> vals(v.begin(), v.end());
    normalize_form(vals);
    found_values.push_back(std::move(vals));
  };

  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    if (cur.basis.size() == 1) {
      finalize_rational(cur.basis[0]);
      continue;
    }
    if (cur.next < ops.size()) {
      const QMat& op = ops[cur.next];
      QMat r = restrict_to(op, cur.basis);
      auto [roots, rest] = split_rational_roots(char_poly(r), primes[cur.next] + 1);
      if (roots.size() == 1 && rest.size() == 1) {
        // Scalar action: nothing to learn from this operator, move on.
        queue.push_back({std::move(cur.basis), cur.next + 1});
        continue;
      }
      for (const auto& [root, mult] : roots) {
        QMat shifted = r;
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] -= root;
        std::vector<QVec> ker = kernel_basis(shifted);
        HZ_REQUIRE(ker.size() == mult, Error,
                   "operator is not semisimple on an invariant subspace");
        std::vector<QVec> sub;
        sub.reserve(ker.size());
        for (const QVec& c : ker) sub.push_back(ambient_from_coords(cur.basis, c));
        queue.push_back({std::move(sub), cur.next + 1});
      }
      if (rest.size() > 1) {
        std::vector<QVec> ker = kernel_basis(poly_at_matrix(rest, r));
        HZ_REQUIRE(ker.size() + 1 == rest.size(), Error,
                   "operator is not semisimple on an invariant subspace");
        std::vector<QVec> sub;
        sub.reserve(ker.size());
        for (const QVec& c : ker) sub.push_back(ambient_from_coords(cur.basis, c));
        queue.push_back({std::move(sub), cur.next + 1});
      }
      continue;
    }

    // All refinement primes exhausted on a subspace of dimension >= 2.
    std::size_t dim = cur.basis.size();
    QMat quad;
    bool have_quad = false;
    bool all_scalar = true;
    for (const QMat& op : ops) {
      QMat r = restrict_to(op, cur.basis);
      if (is_scalar(r)) continue;
      all_scalar = false;
      if (dim == 2 && !have_quad) {
        quad = std::move(r);
        have_quad = true;
      }
    }
    if (all_scalar) {
      // Every supplied operator acts as a scalar here, so any weighted
      // orthogonal basis consists of joint eigenvectors.
      std::vector<QVec> ortho;
      for (QVec v : cur.basis) {
        for (const QVec& u : ortho) {
          Rat num(0), den(0);
          for (std::size_t w = 0; w < h2; ++w) {
            num += es.weights[w] * v[w] * u[w];
            den += es.weights[w] * u[w] * u[w];
          }
          Rat f = num / den;
          for (std::size_t w = 0; w < h2; ++w) v[w] -= f * u[w];
        }
        ortho.push_back(std::move(v));
      }
      for (const QVec& v : ortho) finalize_rational(v);
      continue;
    }
    HZ_REQUIRE(dim == 2 && have_quad, Error,
               "joint eigenvalues of algebraic degree >= 3 are not supported");
    // Irreducible quadratic factor x^2 - s x + t with a real splitting field.
    Rat s = quad[0][0] + quad[1][1];
    Rat t = quad[0][0] * quad[1][1] - quad[0][1] * quad[1][0];
    Rat disc = s * s - Rat(4) * t;
    HZ_REQUIRE(disc.get_den() == 1, Error, "quadratic factor has a non-integral discriminant");
    QuadExtVal lambda(s / 2, Rat(1, 2), Int(disc.get_num()));
    QVec c0(2), c1(2);
    if (quad[0][1] != 0) {
      // coordinates (R01, lambda - R00)
      c0 = {quad[0][1], -quad[0][0]};
      c1 = {Rat(0), Rat(1)};
    } else {
      // coordinates (lambda - R11, R10)
      c0 = {-quad[1][1], quad[1][0]};
      c1 = {Rat(1), Rat(0)};
    }
    std::vector<QuadExtVal> vals(h2);
    for (std::size_t w = 0; w < h2; ++w) {
      Rat base = c0[0] * cur.basis[0][w] + c0[1] * cur.basis[1][w];
      Rat lam = c1[0] * cur.basis[0][w] + c1[1] * cur.basis[1][w];
      vals[w] = QuadExtVal(base) + lambda * QuadExtVal(lam);
    }
    normalize_form(vals);
    std::vector<QuadExtVal> conj(h2);
    for (std::size_t w = 0; w < h2; ++w) conj[w] = qe_conj(vals[w]);
    found_values.push_back(std::move(vals));
    found_values.push_back(std::move(conj));
  }

  for (std::vector<QuadExtVal>& vals : found_values) {
    Eigenform f;
    f.values = std::move(vals);
    f.prime_eigenvalues.reserve(ops.size());
    for (const QMat& op : ops)
      f.prime_eigenvalues.push_back(
          rayleigh(op, f.values, "refined vector is not a joint eigenvector"));
    es.forms.push_back(std::move(f));
  }
  HZ_REQUIRE(es.forms.size() == h2, Error, "eigenform count does not match the type number");
  return es;
}

// ---------------------------------------------------------------------------
// Coefficient series and verification
// ---------------------------------------------------------------------------

const QuadExtVal& AlgebraicCoeffs::c(long n) const {
  HZ_REQUIRE(n >= 1 && n <= n_max, Error, "coefficient index out of range");
  return coeffs[static_cast<std::size_t>(n - 1)];
}

namespace {

bool coprime_to_bad(const ClassTypeData& data, long d) {
  for (const Int& p : data.bad_primes)
    if (Int(d) % p == 0) return false;
  return true;
}

}  // namespace

std::vector<std::vector<Int>> hk_ideal_counts(const ClassTypeData& data, long n_max) {
  std::vector<std::vector<Int>> counts(static_cast<std::size_t>(n_max) + 1);
  for (long d = 1; d <= n_max; ++d) {
    if (!coprime_to_bad(data, d)) continue;
    std::vector<Int> row(data.h1(), Int(0));
    for (const NormIdeal& ni : qa_ideals_of_norm(data, Int(d))) ++row[ni.class_index];
    counts[static_cast<std::size_t>(d)] = std::move(row);
  }
  return counts;
}

AlgebraicCoeffs hk_L_coeffs(const ClassTypeData& data, const EigenSystem& es,
                            std::size_t form_index, long n_max) {
  HZ_REQUIRE(form_index < es.forms.size(), Error, "eigenform index out of range");
  const Eigenform& f = es.forms[form_index];
  HZ_REQUIRE(f.values[data.rho_map[0]] != QuadExtVal(), VanishingAtIdentity,
             "eigenform vanishes at the identity type");
  AlgebraicCoeffs out;
  out.n_max = n_max;
  out.label = "L-coefficients of eigenform " + std::to_string(form_index);
  out.coeffs.assign(static_cast<std::size_t>(n_max), QuadExtVal());
  for (long d = 1; d <= n_max; ++d) {
    if (!coprime_to_bad(data, d)) continue;
    QMat op = to_qmat(hk_compress(data, hk_brandt(data, Int(d))));
    out.coeffs[static_cast<std::size_t>(d - 1)] =
        rayleigh(op, f.values, "eigenform is not an eigenvector of a composite-index operator");
  }
  return out;
}

bool SubMainReport::all_pass() const {
  for (const SubMainRecord& r : records)
    if (!r.pass) return false;
  for (const FiberRecord& r : fiber_records)
    if (!r.pass) return false;
  return true;
}

SubMainReport hk_verify_sub_main(const ClassTypeData& data, long n_max) {
  const FieldParams& fp = data.alg.fp;
  HZ_REQUIRE(fp.m != 2, InvalidParameter,
             "the identity layer is not available over Q(sqrt(-2))");
  HZ_REQUIRE(os_known_maximal_conditions(fp, data.alg.ell), InvalidParameter,
             "standard order is not certified maximal for these parameters");

  std::vector<Int> primes;
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L})
    if (coprime_to_bad(data, p)) primes.push_back(Int(p));

  SubMainReport report;
  report.eigen = hk_eigensystem(data, primes);
  const EigenSystem& es = report.eigen;

  std::vector<DirichletCoeffs> zhat =
      zs_zeta_hat_all(data.forms, make_prime_set(data.bad_primes), n_max);
  std::vector<std::vector<Int>> counts = hk_ideal_counts(data, n_max);

  std::size_t h1 = data.h1(), h2 = data.h2();
  for (long d = 1; d <= n_max; ++d) {
    if (!coprime_to_bad(data, d)) continue;
    QMat op = to_qmat(hk_compress(data, hk_brandt(data, Int(d))));
    for (std::size_t j = 0; j < es.forms.size(); ++j) {
      const Eigenform& f = es.forms[j];
      SubMainRecord rec;
      rec.form_index = j;
      rec.d = d;
      QuadExtVal lhs;
      for (std::size_t i = 0; i < h1; ++i)
        lhs = lhs + f.values[data.rho_map[i]] * QuadExtVal(zhat[i].c(d));
      QuadExtVal cd =
          rayleigh(op, f.values, "eigenform is not an eigenvector of a composite-index operator");
      rec.lhs = lhs;
      rec.rhs = f.values[data.rho_map[0]] * cd;
      rec.pass = rec.lhs == rec.rhs;
      report.records.push_back(std::move(rec));
    }
    for (std::size_t w = 0; w < h2; ++w) {
      FiberRecord rec;
      rec.type_index = w;
      rec.d = d;
      rec.lhs = Rat(0);
      rec.rhs = Rat(0);
      for (std::size_t i = 0; i < h1; ++i) {
        if (data.rho_map[i] != w) continue;
        rec.lhs += zhat[i].c(d);
        rec.rhs += Rat(counts[static_cast<std::size_t>(d)][i]);
      }
      rec.pass = rec.lhs == rec.rhs;
      report.fiber_records.push_back(std::move(rec));
    }
  }
  return report;
}

}  // namespace hermzeta
