#include "hermzeta/zmatrix.hpp"

#include <utility>

namespace hermzeta {

MatZ MatZ::identity(std::size_t n) {
  MatZ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatZ operator*(const MatZ& x, const MatZ& y) {
  HZ_REQUIRE(x.cols == y.rows, Error, "matrix product shape mismatch");
  MatZ z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Int& xik = x(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

MatZ operator-(const MatZ& x, const MatZ& y) {
  HZ_REQUIRE(x.rows == y.rows && x.cols == y.cols, Error, "matrix difference shape mismatch");
  MatZ z(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
  return z;
}

MatZ transpose(const MatZ& x) {
  MatZ z(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
  return z;
}

// Bareiss: all intermediate divisions are exact, so the computation stays in Z.
Int det(const MatZ& x) {
  HZ_REQUIRE(x.rows == x.cols, Error, "determinant of non-square matrix");
  const std::size_t n = x.rows;
  if (n == 0) return 1;
  MatZ m = x;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Eliminate column `col` below row `row` with xgcd row operations; returns
// true if a pivot was produced at (row, col).  Applied to h and mirrored on u.
bool pivot_column(MatZ& h, MatZ& u, std::size_t row, std::size_t col) {
  const std::size_t n = h.rows;
  std::size_t p = row;
  while (p < n && h(p, col) == 0) ++p;
  if (p == n) return false;
  if (p != row) {
    for (std::size_t j = 0; j < h.cols; ++j) std::swap(h(row, j), h(p, j));
    for (std::size_t j = 0; j < u.cols; ++j) std::swap(u(row, j), u(p, j));
  }
  for (std::size_t i = row + 1; i < n; ++i) {
    if (h(i, col) == 0) continue;
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(row, col).get_mpz_t(),
               h(i, col).get_mpz_t());
    Int p1, p2;  // pivot/g and entry/g
    mpz_divexact(p1.get_mpz_t(), h(row, col).get_mpz_t(), g.get_mpz_t());
    mpz_divexact(p2.get_mpz_t(), h(i, col).get_mpz_t(), g.get_mpz_t());
    // (row, i) <- (s*row + t*i, -p2*row + p1*i): determinant 1 block.
    for (std::size_t j = 0; j < h.cols; ++j) {
      Int r0 = h(row, j), r1 = h(i, j);
      h(row, j) = s * r0 + t * r1;
      h(i, j) = p1 * r1 - p2 * r0;
    }
    for (std::size_t j = 0; j < u.cols; ++j) {
      Int r0 = u(row, j), r1 = u(i, j);
      u(row, j) = s * r0 + t * r1;
      u(i, j) = p1 * r1 - p2 * r0;
    }
  }
  if (h(row, col) < 0) {
    for (std::size_t j = 0; j < h.cols; ++j) h(row, j) = -h(row, j);
    for (std::size_t j = 0; j < u.cols; ++j) u(row, j) = -u(row, j);
  }
  return true;
}

}  // namespace

HnfResult hnf_with_transform(const MatZ& x) {
  HnfResult res;
  res.h = x;
  res.u = MatZ::identity(x.rows);
  std::size_t row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < x.cols && row < x.rows; ++col) {
    if (pivot_column(res.h, res.u, row, col)) {
      pivot_cols.push_back(col);
      ++row;
    }
  }
  res.rank = row;
  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t r = 0; r < res.rank; ++r) {
    const std::size_t col = pivot_cols[r];
    const Int& piv = res.h(r, col);
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), res.h(i, col).get_mpz_t(), piv.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < res.h.cols; ++j) res.h(i, j) -= q * res.h(r, j);
      for (std::size_t j = 0; j < res.u.cols; ++j) res.u(i, j) -= q * res.u(r, j);
    }
  }
  return res;
}

MatZ hnf(const MatZ& x) {
  HnfResult r = hnf_with_transform(x);
  MatZ out(r.rank, x.cols);
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) out(i, j) = r.h(i, j);
  return out;
}

std::vector<Int> reduce_mod_lattice(std::vector<Int> v, const MatZ& h) {
  HZ_REQUIRE(h.rows == h.cols && h.rows == v.size(), Error,
             "reduce_mod_lattice needs a square full-rank HNF");
  for (std::size_t i = 0; i < h.rows; ++i) {
    HZ_REQUIRE(h(i, i) > 0, Error, "reduce_mod_lattice: matrix is not in HNF");
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), h(i, i).get_mpz_t());
    if (q == 0) continue;
    for (std::size_t j = 0; j < h.cols; ++j) v[j] -= q * h(i, j);
  }
  return v;
}

MatQ::MatQ(const MatZ& m) : rows(m.rows), cols(m.cols), a(m.a.size()) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = m.a[i];
}

MatQ MatQ::identity(std::size_t n) {
  MatQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatQ operator*(const MatQ& x, const MatQ& y) {
  HZ_REQUIRE(x.cols == y.rows, Error, "matrix product shape mismatch");
  MatQ z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Rat& xik = x(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

Rat det(const MatQ& x) {
  HZ_REQUIRE(x.rows == x.cols, Error, "determinant of non-square matrix");
  MatQ m = x;
  const std::size_t n = m.rows;
  Rat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      d = -d;
    }
    d *= m(k, k);
    Rat inv = 1 / m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

MatQ inverse(const MatQ& x) {
  HZ_REQUIRE(x.rows == x.cols, Error, "inverse of non-square matrix");
  const std::size_t n = x.rows;
  MatQ m = x, inv = MatQ::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    HZ_REQUIRE(p < n, Error, "inverse of singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rat piv = 1 / m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) *= piv;
      inv(k, j) *= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rat f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::pair<MatZ, Int> clear_denominators(const MatQ& x) {
  Int den = 1;
  for (const Rat& r : x.a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
  MatZ m(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) {
    Rat scaled = x.a[i] * den;
    m.a[i] = scaled.get_num();
  }
  return {std::move(m), den};
}

}  // namespace hermzeta
