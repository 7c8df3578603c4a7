#include <doctest.h>

#include "khlab/error.hpp"
#include "khlab/sumset.hpp"
#include "support.hpp"

using namespace khlab;

namespace {

const std::vector<LatticePoint> kA1{{0, 0}, {3, 0}, {2, 2}, {0, 1}};
const std::vector<LatticePoint> kA2{{0, 0}, {2, 0}, {2, 2}, {0, 1}};
const std::vector<LatticePoint> kD5{{0, 0}, {5, 0}, {3, 1}, {1, 2}, {0, 5}};

}  // namespace

TEST_CASE("phi of the two four-point sets") {
  const auto p1 = phi_values(FiniteSubset::normalize(kA1), 4);
  CHECK(p1 == std::vector<std::uint64_t>{1, 4, 10, 20, 35});
  const auto p2 = phi_values(FiniteSubset::normalize(kA2), 4);
  CHECK(p2 == std::vector<std::uint64_t>{1, 4, 10, 19, 31});
}

TEST_CASE("fold matches brute-force sumsets") {
  gen::Rng rng(21);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const auto a = FiniteSubset::normalize(
        gen::points(rng, n, gen::uniform(rng, 0, 5), static_cast<std::size_t>(gen::uniform(rng, 1, 6))));
    const int t_max = n == 3 ? 3 : 4;
    const auto levels = fold(a, t_max);
    REQUIRE(levels.size() == static_cast<std::size_t>(t_max + 1));
    for (int t = 0; t <= t_max; ++t) {
      const auto brute = oracle::sumset(a.points(), t);
      CHECK(levels[t].t == t);
      CHECK(levels[t].points.to_vector() == std::vector<LatticePoint>(brute.begin(), brute.end()));
    }
  }
}

TEST_CASE("threaded and sequential folds agree") {
  gen::Rng rng(22);
  for (int it = 0; it < 10; ++it) {
    const auto a = gen::full_rank(rng, 2, 6, 3, 8);
    FoldOptions par;
    par.threads = 4;
    CHECK(phi_values(a, 12) == phi_values(a, 12, par));
  }
}

TEST_CASE("wide coordinates use the generic path") {
  const auto a = FiniteSubset::normalize({{0, 0, 0, 0, 0, 0, 0, 0},
                                          {1'000'000, 0, 0, 0, 0, 0, 0, 0},
                                          {0, 1, 1, 0, 0, 0, 0, 7},
                                          {0, 0, 0, 0, 3, 0, 0, 1}});
  const auto got = phi_values(a, 3);
  for (int t = 0; t <= 3; ++t) CHECK(got[t] == oracle::sumset(a.points(), t).size());
}

TEST_CASE("point ceiling raises ResourceCapError with the last complete level") {
  FoldOptions opts;
  opts.max_points = 30;
  const auto a = FiniteSubset::normalize(kA1);
  try {
    phi_values(a, 10, opts);
    FAIL("expected a resource cap");
  } catch (const ResourceCapError& e) {
    CHECK(e.level() == 3);
  }
}

TEST_CASE("semigroup membership and height") {
  const auto a = FiniteSubset::normalize(kD5);
  const Membership m1 = semigroup_member(a, {3, 1});
  CHECK(m1.member);
  CHECK(m1.height == 1);
  const Membership m2 = semigroup_member(a, {4, 3});
  CHECK(m2.member);
  CHECK(m2.height == 2);
  CHECK_FALSE(semigroup_member(a, {1, 0}).member);
  CHECK(semigroup_member(a, {0, 0}).height == 0);
}

TEST_CASE("reduction numbers") {
  CHECK(reduction_number(FiniteSubset::normalize(kD5)) == 2);
  CHECK(reduction_number(FiniteSubset::normalize({{0, 0}, {4, 0}, {0, 4}, {2, 2}, {1, 0}})) ==
        oracle::reduction_number(FiniteSubset::normalize({{0, 0}, {4, 0}, {0, 4}, {2, 2}, {1, 0}}), 8));
  CHECK(reduction_number(FiniteSubset::normalize({{0, 0}, {4, 0}, {0, 4}})) == 1);
  CHECK(reduction_number(FiniteSubset::normalize({{0, 0, 0}, {3, 0, 0}, {0, 3, 0}, {0, 0, 3}})) == 1);
  CHECK_THROWS_AS(reduction_number(FiniteSubset::normalize(kA1)), Error);
}

TEST_CASE("reduction number of full simplices") {
  // Top degree of k[y_0..y_n]/(y_i^d) is (n+1)(d-1); r is its floor in units of d.
  for (int n = 1; n <= 3; ++n)
    for (Coord d = 1; d <= (n == 3 ? 3 : 5); ++d) {
      std::vector<LatticePoint> full;
      LatticePoint p(static_cast<std::size_t>(n), 0);
      auto rec = [&](auto&& self, int j, Coord left) -> void {
        if (j == n) return full.push_back(p);
        for (Coord v = 0; v <= left; ++v) {
          p[j] = v;
          self(self, j + 1, left - v);
        }
        p[j] = 0;
      };
      rec(rec, 0, d);
      const auto a = FiniteSubset::normalize(full);
      const int expected = std::max<int>(1, static_cast<int>((n + 1) * (d - 1) / d));
      CHECK(reduction_number(a) == expected);
      if (n < 3) CHECK(oracle::reduction_number(a, 6) == expected);
    }
}

TEST_CASE("reduction number matches the definition on random simplicial sets") {
  gen::Rng rng(23);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
    const auto a = gen::simplicial(rng, n, gen::uniform(rng, 1, 5),
                                   static_cast<std::size_t>(gen::uniform(rng, 0, 4)));
    CHECK(reduction_number(a) == oracle::reduction_number(a, 10));
  }
}

TEST_CASE("B-minimal elements of the d = 5 set") {
  const auto a = FiniteSubset::normalize(kD5);
  const auto mins = b_minimal_elements(a, 2);
  int top = 0;
  for (const auto& hp : mins) top = std::max(top, hp.height);
  CHECK(top == 2);
  bool has_42 = false;
  for (const auto& hp : mins) has_42 = has_42 || (hp.point == LatticePoint{4, 3} && hp.height == 2);
  CHECK(has_42);
  const auto level_one = b_minimal_elements(a, 1);
  for (const auto& hp : level_one) CHECK(hp.height <= 1);
}
