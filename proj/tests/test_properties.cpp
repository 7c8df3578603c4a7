#include <doctest.h>

#include "khlab/geometry.hpp"
#include "khlab/hilbert.hpp"
#include "khlab/lattice.hpp"
#include "khlab/sumset.hpp"
#include "support.hpp"

using namespace khlab;

namespace {

std::vector<mpz_class> as_mpz(const std::vector<std::uint64_t>& v) {
  std::vector<mpz_class> out;
  for (auto x : v) out.emplace_back(static_cast<unsigned long>(x));
  return out;
}

/// Random unimodular matrix as a product of elementary operations.
IntMatrix unimodular(gen::Rng& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int k = 0; k < 4; ++k) {
    const auto i = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long c = gen::uniform(rng, -2, 2);
    for (std::size_t col = 0; col < n; ++col) u(i, col) += c * u(j, col);
  }
  return u;
}

std::vector<LatticePoint> apply(const IntMatrix& u, const std::vector<LatticePoint>& pts) {
  std::vector<LatticePoint> out;
  for (const auto& p : pts) {
    LatticePoint q(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      mpz_class s = 0;
      for (std::size_t j = 0; j < p.size(); ++j) s += u(i, j) * p[j];
      q[i] = s.get_si();
    }
    out.push_back(q);
  }
  return out;
}

}  // namespace

TEST_CASE("translation invariance of phi") {
  gen::Rng rng(91);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    auto pts = gen::points(rng, n, gen::uniform(rng, 1, 5), static_cast<std::size_t>(gen::uniform(rng, 2, 7)));
    const auto base = phi_values(FiniteSubset::normalize(pts), n == 3 ? 4 : 6);
    LatticePoint tau(n);
    for (auto& c : tau) c = gen::uniform(rng, -20, 20);
    for (auto& p : pts)
      for (std::size_t i = 0; i < n; ++i) p[i] += tau[i];
    CHECK(phi_values(FiniteSubset::normalize(pts), n == 3 ? 4 : 6) == base);
  }
}

TEST_CASE("monotonicity, homogenization and Macaulay growth") {
  gen::Rng rng(92);
  for (int it = 0; it < 30; ++it) {
    const auto a = gen::full_rank(rng, static_cast<std::size_t>(gen::uniform(rng, 1, 3)), 5, 2, 9);
    const auto phi = phi_values(a, 5);
    for (std::size_t t = 1; t < phi.size(); ++t) CHECK(phi[t - 1] <= phi[t]);
    const auto bar = homogenize(a).points;
    for (int t = 0; t <= 3; ++t) CHECK(oracle::sumset(bar, t).size() == phi[t]);
    CHECK(check_macaulay_growth(as_mpz(phi)).ok);
  }
}

TEST_CASE("reduction preserves phi") {
  gen::Rng rng(93);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
    // Points on a random sublattice of lower rank.
    std::vector<LatticePoint> gens;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      LatticePoint g(n);
      for (auto& c : g) c = gen::uniform(rng, -3, 3);
      gens.push_back(g);
    }
    std::vector<LatticePoint> pts;
    for (int k = 0; k < 5; ++k) {
      LatticePoint p(n, 0);
      for (const auto& g : gens) {
        const long c = gen::uniform(rng, 0, 3);
        for (std::size_t i = 0; i < n; ++i) p[i] += c * g[i];
      }
      pts.push_back(p);
    }
    const auto a = FiniteSubset::normalize(pts);
    const auto red = reduce_to_full_rank(a);
    CHECK(red.rank < n);
    CHECK(phi_values(a, 5) == phi_values(red.subset, 5));
  }
}

TEST_CASE("SNF divisibility chain") {
  gen::Rng rng(94);
  for (int it = 0; it < 100; ++it) {
    IntMatrix m(static_cast<std::size_t>(gen::uniform(rng, 1, 5)), static_cast<std::size_t>(gen::uniform(rng, 1, 5)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = gen::uniform(rng, -9, 9);
    const auto s = smith_normal_form(m);
    for (std::size_t k = 0; k + 1 < s.rank; ++k) CHECK(mpz_divisible_p(s.diagonal[k + 1].get_mpz_t(), s.diagonal[k].get_mpz_t()));
    for (std::size_t k = 1; k <= s.rank; ++k) {
      mpz_class prod = 1;
      for (std::size_t j = 0; j < k; ++j) prod *= s.diagonal[j];
      CHECK(minor_gcd(m, k) == prod);
    }
  }
}

TEST_CASE("volume under unimodular maps and translations") {
  gen::Rng rng(95);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
    const auto a = gen::full_rank(rng, n, 4, n + 1, 8);
    const auto u = unimodular(rng, n);
    auto moved = apply(u, a.points());
    for (auto& p : moved) p[0] += 7;
    CHECK(hull_volume(moved) == hull_volume(a.points()));
    CHECK(degree_via_volume(FiniteSubset::normalize(moved)) == degree_via_volume(a));
  }
}

TEST_CASE("degree identity and fitted polynomial properties") {
  gen::Rng rng(96);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const auto a = gen::full_rank(rng, n, n == 3 ? 3 : 5, 2, n == 3 ? 6 : 9);
    const mpz_class deg = degree_via_volume(a);
    CHECK(deg == degree_via_snf(a));
    FoldPhiSource src(a);
    const auto g = fit_khovanskii(src, static_cast<int>(n), CertifyPolicy::windowed(6));
    mpz_class fac = 1;
    for (std::size_t k = 2; k <= n; ++k) fac *= static_cast<unsigned long>(k);
    CHECK(g.polynomial.leading() * fac == deg);
    CHECK(g.polynomial.is_integer_valued());
    CHECK_NOTHROW(gotzmann_development(g.polynomial));
    const auto cf = closed_form_small(a);
    if (cf) {
      CHECK(cf->polynomial == g.polynomial);
      CHECK(cf->n0 == g.n0);
    }
  }
}

TEST_CASE("r(A) equals the largest B-minimal height") {
  gen::Rng rng(97);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const auto a = gen::simplicial(rng, n, gen::uniform(rng, 1, n == 3 ? 3 : 6),
                                   static_cast<std::size_t>(gen::uniform(rng, 0, 4)));
    const int r = reduction_number(a);
    int k = 0;
    for (const auto& hp : b_minimal_elements(a, r + 1)) k = std::max(k, hp.height);
    CHECK(std::max(k, 1) == r);
  }
}

TEST_CASE("rl complement contains the boundary") {
  gen::Rng rng(98);
  for (int it = 0; it < 15; ++it) {
    const int n = static_cast<int>(gen::uniform(rng, 2, 3));
    const auto g = gt_subset(gen::system(rng, n, 1, n == 2 ? 7 : 5));
    const auto s = rl_sets(g);
    const long d = g.system.d();
    for (const auto& p : s.complement.points()) CHECK(coordinate_sum(p) <= d);
    for (const auto& p : g.a.points()) {
      const bool interior = std::all_of(p.begin(), p.end(), [](Coord c) { return c > 0; }) &&
                            coordinate_sum(p) < d;
      CHECK(s.complement.contains(p) != interior);
    }
  }
}
