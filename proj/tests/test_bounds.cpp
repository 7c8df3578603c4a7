#include <doctest.h>

#include "khlab/bounds.hpp"
#include "khlab/error.hpp"
#include "khlab/sumset.hpp"
#include "support.hpp"

using namespace khlab;

namespace {

const std::vector<LatticePoint> kD5{{0, 0}, {5, 0}, {3, 1}, {1, 2}, {0, 5}};

std::vector<LatticePoint> veronese(int n, Coord d) {
  std::vector<LatticePoint> out;
  LatticePoint p(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int j, Coord left) -> void {
    if (j == n) return out.push_back(p);
    for (Coord v = 0; v <= left; ++v) {
      p[j] = v;
      self(self, j + 1, left - v);
    }
    p[j] = 0;
  };
  rec(rec, 0, d);
  return out;
}

const BoundEntry& entry(const BoundsReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.name == name) return e;
  FAIL("missing entry " << name);
  throw 0;
}

GrowthAnalysis certified(const FiniteSubset& a) {
  FoldPhiSource src(a);
  return fit_khovanskii(src, static_cast<int>(a.dim()), CertifyPolicy::windowed(10));
}

}  // namespace

TEST_CASE("effective bounds on the d = 5 set") {
  const auto eff = bound_effective_khovanskii(FiniteSubset::normalize(kD5));
  REQUIRE(eff.general.applicable);
  // (n+1)(deg - |A| + n) + 1 with n = 2, deg = 5, |A| = 5.
  CHECK(*eff.general.value == 7);
  CHECK_FALSE(eff.index_one.applicable);
  CHECK(eff.index_one.hypothesis.find("index 5") != std::string::npos);
}

TEST_CASE("effective bounds need a simplex") {
  const auto eff = bound_effective_khovanskii(FiniteSubset::normalize({{0, 0}, {3, 0}, {2, 2}, {0, 1}}));
  CHECK_FALSE(eff.general.applicable);
  CHECK_FALSE(eff.index_one.applicable);
}

TEST_CASE("index-one bound on Veronese sets") {
  for (auto [n, d] : {std::pair<int, Coord>{2, 3}, {2, 4}, {3, 2}, {1, 6}}) {
    const auto a = FiniteSubset::normalize(veronese(n, d));
    const auto eff = bound_effective_khovanskii(a);
    REQUIRE(eff.index_one.applicable);
    mpz_class dn = 1;
    for (int i = 0; i < n; ++i) dn *= d;
    const mpz_class size = binomial(mpz_class(static_cast<long>(n + d)), static_cast<unsigned long>(n));
    const mpz_class m = std::max(mpz_class(3 * n + 1), mpz_class((n + 1) * (size - n) - 1));
    CHECK(*eff.index_one.value == (n + 1) * dn - m);
  }
}

TEST_CASE("k-ab and reduction-number bounds") {
  const auto a = FiniteSubset::normalize(kD5);
  CHECK(*bound_k_ab(a).value == 4);
  CHECK(*bound_reduction_number(a).value == 3);
  const auto v = FiniteSubset::normalize(veronese(1, 4));
  CHECK(*bound_k_ab(v).value == 1);
  CHECK(*bound_reduction_number(v).value == 2);
  const auto v23 = FiniteSubset::normalize(veronese(2, 3));
  CHECK(*bound_k_ab(v23).value == 4);
  CHECK_THROWS_AS(bound_k_ab(FiniteSubset::normalize({{0, 0}, {3, 0}, {2, 2}, {0, 1}})), Error);
}

TEST_CASE("K(A,B) stays below n for GT-subsets") {
  gen::Rng rng(71);
  for (int it = 0; it < 10; ++it) {
    const int n = static_cast<int>(gen::uniform(rng, 2, 3));
    const auto g = gt_subset(gen::system(rng, n, 1, n == 2 ? 8 : 5));
    const int r = reduction_number(g.a);
    CHECK(r <= n);
    CHECK(*bound_k_ab(g.a).value <= (n + 1) * (n - 1) + 1);
  }
}

TEST_CASE("Hoa-Stuckrad bounds") {
  const auto a = FiniteSubset::normalize(kD5);
  CHECK_FALSE(bound_hoa_stuckrad_cm(a, {}).applicable);
  const BoundEntry cm = bound_hoa_stuckrad_cm(a, {true, false});
  REQUIRE(cm.applicable);
  CHECK(*cm.value == 4);
  CHECK(cm.hypothesis.find("(ii)") != std::string::npos);
  const BoundEntry smooth = bound_hoa_stuckrad_cm(a, {true, true});
  CHECK(*smooth.value == 4);
  CHECK(*bound_hoa_stuckrad_general(a).value == 6);

  const auto line = FiniteSubset::normalize({{0}, {2}, {5}});
  const BoundEntry one = bound_hoa_stuckrad_cm(line, {});
  CHECK(one.applicable);
  CHECK(one.hypothesis.find("(i)") != std::string::npos);

  const auto tri = FiniteSubset::normalize({{0, 0}, {4, 0}, {0, 4}});
  CHECK(*bound_hoa_stuckrad_general(tri).value == 1);
}

TEST_CASE("condition (iii) instances") {
  gen::Rng rng(72);
  int seen = 0;
  for (int it = 0; it < 200; ++it) {
    const auto a = gen::simplicial(rng, 2, gen::uniform(rng, 1, 3), static_cast<std::size_t>(gen::uniform(rng, 2, 8)));
    const mpz_class deg = degree_via_volume(a);
    if (deg > static_cast<long>(a.size()) - 2) continue;
    ++seen;
    const BoundEntry e = bound_hoa_stuckrad_cm(a, {});
    REQUIRE(e.applicable);
    CHECK(e.hypothesis.find("(iii)") != std::string::npos);
    CHECK(*e.value == deg - static_cast<long>(a.size()) + 4);
  }
  CHECK(seen > 0);
}

TEST_CASE("face bounds") {
  const auto v = FiniteSubset::normalize(veronese(2, 3));
  const auto fb = bound_r_from_faces(v);
  REQUIRE(fb.full_face);
  CHECK(fb.full_face->value == 2);
  const auto d5 = bound_r_from_faces(FiniteSubset::normalize(kD5));
  CHECK(d5.full_face->value == 24);
  CHECK(d5.point_count->value == 23);
}

TEST_CASE("gt bound is n+1") {
  CHECK(*bound_gt(CongruenceSystem{2, {5}, {{0, 1, 2}}}).value == 3);
  CHECK(*bound_gt(CongruenceSystem{1, {4}, {{0, 1}}}).value == 2);
}

TEST_CASE("report on the d = 5 set") {
  const CongruenceSystem sys{2, {5}, {{0, 1, 2}}};
  const auto a = FiniteSubset::normalize(kD5);
  const BoundsReport r = compare_report(a, certified(a), {true, false}, &sys);
  CHECK(*entry(r, "k-ab").value == 4);
  CHECK(*entry(r, "hoa-stuckrad-cm").value == 4);
  CHECK(*entry(r, "reduction-number").value == 3);
  CHECK(*entry(r, "gt").value == 3);
  CHECK(*r.best_applicable == 3);
  CHECK(r.observed_n0 == 0);
  CHECK(r.sound);
  CHECK(r.reduction_number == 2);
}

TEST_CASE("non-simplicial report") {
  const auto a = FiniteSubset::normalize({{0, 0}, {3, 0}, {2, 2}, {0, 1}});
  const BoundsReport r = compare_report(a, certified(a), {});
  CHECK_FALSE(r.best_applicable);
  CHECK(entry(r, "k-ab").hypothesis.find("not simplicial") != std::string::npos);
  CHECK(r.sound);
}

TEST_CASE("violations are reported") {
  const auto a = FiniteSubset::normalize(kD5);
  GrowthAnalysis fake = certified(a);
  fake.n0 = 100;
  BoundsReport r = collect_bounds(a, {});
  check_soundness(r, fake);
  CHECK_FALSE(r.sound);
  CHECK_FALSE(r.violations.empty());
}

TEST_CASE("random simplicial instances are sound") {
  gen::Rng rng(73);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
    const auto a = gen::simplicial(rng, n, gen::uniform(rng, 2, 5), static_cast<std::size_t>(gen::uniform(rng, 0, 4)));
    const BoundsReport r = compare_report(a, certified(a), {});
    CHECK(r.sound);
    mpz_class best;
    bool any = false;
    for (const auto& e : r.entries)
      if (e.applicable && e.value && (!any || *e.value < best)) best = *e.value, any = true;
    REQUIRE(r.best_applicable);
    CHECK(*r.best_applicable == best);
    const int rr = *r.reduction_number;
    if (rr > 1) {
      const int nn = static_cast<int>(n);
      CHECK(*entry(r, "reduction-number").value <= (nn + 1) * (rr - 1) - nn + 2);
      CHECK(*entry(r, "k-ab").value - ((nn + 1) * (rr - 1) - nn + 2) == nn - 1);
    }
  }
}
