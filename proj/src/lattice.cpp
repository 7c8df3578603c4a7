#include "khlab/lattice.hpp"

#include <algorithm>

#include "khlab/error.hpp"

namespace khlab {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<LatticePoint>& cols,
                                  std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i)
      m(i, j) = mpz_class(static_cast<long>(cols[j][i]));
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c)
      throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_)
    throw Error(ErrorKind::InvalidInput, "matrix shape mismatch in product");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// row_dst -= q * row_src, mirrored on the left transform.
void row_axpy(IntMatrix& a, IntMatrix& u, std::size_t dst, std::size_t src,
              const mpz_class& q) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) -= q * a(src, j);
  for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) -= q * u(src, j);
}

void col_axpy(IntMatrix& a, IntMatrix& v, std::size_t dst, std::size_t src,
              const mpz_class& q) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) -= q * a(i, src);
  for (std::size_t i = 0; i < v.rows(); ++i) v(i, dst) -= q * v(i, src);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t k_max = std::min(rows, cols);

  for (std::size_t t = 0; t < k_max; ++t) {
    // Pivot: nonzero entry of least absolute value in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    a.swap_rows(t, pi);
    u.swap_rows(t, pi);
    a.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      mpz_class q;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_axpy(a, u, i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_axpy(a, v, j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is now smaller than the pivot; move it into place.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) bi = t, bj = j;
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        continue;
      }
      // Row and column cleared; enforce divisibility of the trailing block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_axpy(a, u, t, bad, mpz_class(-1));
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }

  SnfResult r;
  r.diagonal.reserve(k_max);
  for (std::size_t k = 0; k < k_max; ++k) {
    r.diagonal.push_back(a(k, k));
    if (a(k, k) != 0) ++r.rank;
  }
  r.left = std::move(u);
  r.right = std::move(v);
  return r;
}

mpz_class minor_gcd(const IntMatrix& m, std::size_t r) {
  if (r == 0 || r > std::min(m.rows(), m.cols()))
    throw Error(ErrorKind::InvalidInput, "minor size out of range");
  const SnfResult snf = smith_normal_form(m);
  if (snf.rank < r)
    throw Error(ErrorKind::RankDeficient,
                "all " + std::to_string(r) + "x" + std::to_string(r) +
                    " minors vanish (rank " + std::to_string(snf.rank) + ")");
  mpz_class g = 1;
  for (std::size_t k = 0; k < r; ++k) g *= snf.diagonal[k];
  return g;
}

namespace {

IntMatrix difference_matrix(const FiniteSubset& a) {
  const auto& pts = a.points();
  std::vector<LatticePoint> diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    LatticePoint d(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) d[i] = pts[k][i] - pts[0][i];
    diffs.push_back(std::move(d));
  }
  return IntMatrix::from_columns(diffs, a.dim());
}

}  // namespace

DifferenceLattice difference_lattice(const FiniteSubset& a) {
  DifferenceLattice out;
  if (a.dim() == 0) {
    out.index = mpz_class(1);
    return out;
  }
  if (a.size() == 1) return out;
  const SnfResult snf = smith_normal_form(difference_matrix(a));
  out.rank = snf.rank;
  if (snf.rank == a.dim()) {
    mpz_class idx = 1;
    for (const auto& d : snf.diagonal) idx *= d;
    out.index = idx;
  }
  return out;
}

FullRankReduction reduce_to_full_rank(const FiniteSubset& a) {
  const std::size_t n = a.dim();
  FullRankReduction out{a, 0, IntMatrix::identity(n), LatticePoint(n, 0)};
  if (a.size() == 1) {
    out.subset = FiniteSubset::normalize({LatticePoint{}});
    out.transform = IntMatrix(0, n);
    out.base = a.points().front();
    return out;
  }
  const SnfResult snf = smith_normal_form(difference_matrix(a));
  out.rank = snf.rank;
  if (snf.rank == n) return out;

  // Rows of U beyond the rank annihilate every difference a - a_0.
  const std::size_t r = snf.rank;
  IntMatrix proj(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = snf.left(i, j);

  const LatticePoint& base = a.points().front();
  std::vector<LatticePoint> image;
  image.reserve(a.size());
  for (const auto& p : a.points()) {
    LatticePoint q(r);
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class s = 0;
      for (std::size_t j = 0; j < n; ++j)
        s += proj(i, j) * static_cast<long>(p[j] - base[j]);
      if (!s.fits_slong_p())
        throw Error(ErrorKind::InvalidInput,
                    "reduced coordinates exceed 64 bits");
      q[i] = s.get_si();
    }
    image.push_back(std::move(q));
  }
  out.subset = FiniteSubset::normalize(image);
  out.transform = std::move(proj);
  out.base = base;
  return out;
}

}  // namespace khlab
