#pragma once

// Brute-force oracles and random generators shared by the tests.

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "khlab/gt.hpp"
#include "khlab/lattice.hpp"
#include "khlab/subset.hpp"

namespace oracle {

using khlab::Coord;
using khlab::LatticePoint;

inline LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// tA by repeated pairwise addition into a std::set.
inline std::set<LatticePoint> sumset(const std::vector<LatticePoint>& a, int t) {
  std::set<LatticePoint> cur{LatticePoint(a.front().size(), 0)};
  for (int k = 0; k < t; ++k) {
    std::set<LatticePoint> next;
    for (const auto& p : cur)
      for (const auto& q : a) next.insert(add(p, q));
    cur = std::move(next);
  }
  return cur;
}

/// Leibniz expansion.
inline mpz_class det(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    mpz_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

/// GCD of all r x r minors, from every choice of rows and columns.
inline mpz_class minor_gcd(const khlab::IntMatrix& m, std::size_t r) {
  std::vector<std::vector<std::size_t>> rs, cs;
  subsets(m.rows(), r, rs);
  subsets(m.cols(), r, cs);
  mpz_class g = 0;
  for (const auto& ri : rs)
    for (const auto& ci : cs) {
      std::vector<std::vector<mpz_class>> sub(r, std::vector<mpz_class>(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub[i][j] = m(ri[i], ci[j]);
      const mpz_class d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

/// Rank of the difference vectors and the index of their lattice, from
/// brute-force minors of the difference matrix.
inline std::pair<std::size_t, mpz_class> rank_and_index(const std::vector<LatticePoint>& pts) {
  const std::size_t n = pts.front().size();
  khlab::IntMatrix m(pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
  for (std::size_t r = std::min(m.rows(), n); r > 0; --r) {
    const mpz_class g = oracle::minor_gcd(m, r);
    if (g != 0) return {r, r == n ? g : mpz_class(0)};
  }
  return {0, n == 0 ? mpz_class(1) : mpz_class(0)};
}

/// Area of the convex hull of planar points (monotone chain + shoelace).
inline mpq_class hull_area(std::vector<LatticePoint> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return 0;
  auto cross = [](const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<LatticePoint> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  mpz_class twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    twice += mpz_class(static_cast<long>(a[0])) * b[1] - mpz_class(static_cast<long>(b[0])) * a[1];
  }
  mpq_class area(abs(twice), 2);
  area.canonicalize();
  return area;
}

/// Level-t solutions by scanning the whole box [0, td]^{n+1}.
inline std::size_t gt_count(const khlab::CongruenceSystem& sys, int t) {
  const long total = t * sys.d();
  const std::size_t vars = static_cast<std::size_t>(sys.n) + 1;
  std::vector<long> y(vars, 0);
  std::size_t count = 0;
  for (;;) {
    long sum = 0;
    for (long v : y) sum += v;
    if (sum == total) {
      bool ok = true;
      for (std::size_t i = 0; i < sys.moduli.size() && ok; ++i) {
        long r = 0;
        for (std::size_t j = 0; j < vars; ++j) r += sys.rows[i][j] * y[j];
        ok = r % sys.moduli[i] == 0;
      }
      count += ok;
    }
    std::size_t j = 0;
    while (j < vars && y[j] == total) y[j++] = 0;
    if (j == vars) break;
    ++y[j];
  }
  return count;
}

/// Least r >= 1 with (r+1)Ā = B + rĀ, straight from the definition.
inline int reduction_number(const khlab::FiniteSubset& a, int cap) {
  const auto bar = khlab::homogenize(a).points;
  const std::size_t m = bar.front().size();
  std::vector<LatticePoint> b;
  for (std::size_t i = 0; i < m; ++i) {
    LatticePoint e(m, 0);
    e[i] = a.degree();
    b.push_back(e);
  }
  for (int r = 1; r <= cap; ++r) {
    const auto upper = sumset(bar, r + 1);
    std::set<LatticePoint> lower;
    for (const auto& p : sumset(bar, r))
      for (const auto& e : b) lower.insert(add(p, e));
    if (upper == lower) return r;
  }
  return -1;
}

}  // namespace oracle

namespace gen {

using khlab::Coord;
using khlab::LatticePoint;

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// A point of Z^n_{>=0} with coordinate sum at most d.
inline LatticePoint simplex_point(Rng& rng, std::size_t n, Coord d) {
  LatticePoint p(n, 0);
  Coord left = d;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i : order) {
    p[i] = uniform(rng, 0, left);
    left -= p[i];
  }
  return p;
}

/// `count` points (duplicates allowed) in the degree-d simplex.
inline std::vector<LatticePoint> points(Rng& rng, std::size_t n, Coord d, std::size_t count) {
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(simplex_point(rng, n, d));
  return out;
}

/// Random subset whose difference lattice has full rank n.
inline khlab::FiniteSubset full_rank(Rng& rng, std::size_t n, Coord dmax, std::size_t min_size,
                                     std::size_t max_size) {
  for (;;) {
    const Coord d = uniform(rng, 1, dmax);
    const auto size = static_cast<std::size_t>(
        uniform(rng, static_cast<long>(min_size), static_cast<long>(max_size)));
    auto a = khlab::FiniteSubset::normalize(points(rng, n, d, size));
    if (a.size() >= min_size && a.size() <= max_size && khlab::difference_lattice(a).index)
      return a;
  }
}

/// Full-rank subset with exactly `size` points.
inline khlab::FiniteSubset full_rank_exact(Rng& rng, std::size_t n, Coord dmax, std::size_t size) {
  return full_rank(rng, n, dmax, size, size);
}

/// 0, d e_1, ..., d e_n and up to `extra` further points of the simplex.
inline khlab::FiniteSubset simplicial(Rng& rng, std::size_t n, Coord d, std::size_t extra) {
  std::vector<LatticePoint> pts{LatticePoint(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint e(n, 0);
    e[i] = d;
    pts.push_back(e);
  }
  for (std::size_t k = 0; k < extra; ++k) pts.push_back(simplex_point(rng, n, d));
  return khlab::FiniteSubset::normalize(pts);
}

/// Valid system with n variables beyond y_0, s rows and product of moduli <= dmax.
inline khlab::CongruenceSystem system(Rng& rng, int n, int s, long dmax) {
  for (;;) {
    khlab::CongruenceSystem sys;
    sys.n = n;
    long prod = 1;
    bool ok = true;
    for (int i = 0; i < s && ok; ++i) {
      const long hi = dmax / prod;
      if (hi < 2) {
        ok = false;
        break;
      }
      const long m = uniform(rng, 2, hi);
      prod *= m;
      std::vector<long> row(static_cast<std::size_t>(n) + 1);
      long g = m;
      for (auto& a : row) {
        a = uniform(rng, 0, m - 1);
        g = std::gcd(g, a);
      }
      if (g != 1) ok = false;
      sys.moduli.push_back(m);
      sys.rows.push_back(std::move(row));
    }
    if (ok) return sys;
  }
}

}  // namespace gen
