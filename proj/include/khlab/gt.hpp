#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "khlab/hilbert.hpp"
#include "khlab/polynomial.hpp"
#include "khlab/subset.hpp"

namespace khlab {

/// y_0 + ... + y_n = t d together with a_{i,0} y_0 + ... + a_{i,n} y_n ≡ 0
/// (mod d_i), where d = d_1 ... d_s.
struct CongruenceSystem {
  int n = 0;
  std::vector<long> moduli;
  std::vector<std::vector<long>> rows;  // s rows of length n+1

  /// Product of the moduli.
  long d() const;
  /// Throws InvalidInput unless shapes, ranges and row GCDs are valid.
  void validate() const;

  bool operator==(const CongruenceSystem&) const = default;
};

/// Level-t solutions in lexicographic order.
std::vector<LatticePoint> solve_level_enumerate(const CongruenceSystem& sys, int t,
                                                std::size_t max_points = kDefaultMaxPoints);

/// Number of level-t solutions by dynamic programming over residue tuples.
mpz_class solve_level_count(const CongruenceSystem& sys, int t);

struct GtSubset {
  CongruenceSystem system;
  std::vector<LatticePoint> a_bar;  // level-1 solutions
  FiniteSubset a;                   // a_bar without y_0
};

GtSubset gt_subset(const CongruenceSystem& sys);

/// (d t^2 + θ t + 2)/2 for n = 2, s = 1, a_{1,0} = 0 < a_{1,1}, d > 2.
RationalPolynomial gt_surface_polynomial(const CongruenceSystem& sys);

/// The θ coefficient of the surface formula.
long gt_surface_theta(const CongruenceSystem& sys);

/// (1/d) C(td+n, n) + (d-1)/d for s = 1, d prime, 2 <= n < d, a_{1,0} = 0
/// and 0 < a_{1,1} < ... < a_{1,n}.
RationalPolynomial gt_prime_polynomial(const CongruenceSystem& sys);

class GtCountSource : public PhiSource {
 public:
  explicit GtCountSource(CongruenceSystem sys) : sys_(std::move(sys)) {}
  mpz_class value(int t) override { return solve_level_count(sys_, t); }

 private:
  CongruenceSystem sys_;
};

struct RlSets {
  std::vector<LatticePoint> rl;  // interior level-1 solutions without y_0
  FiniteSubset complement;       // full degree-d simplex points minus rl
};

RlSets rl_sets(const GtSubset& g);

struct RlReport {
  bool applicable = false;  // n >= 2
  int n = 0;
  long d = 0;
  std::size_t rl_size = 0;
  mpz_class expected_degree;  // d^n
  mpz_class degree_volume;
  mpz_class degree_snf;
  bool degree_ok = false;
  int phi_from = 0, phi_to = 0;  // checked range of C(td+n, n)
  bool phi_ok = false;
  mpz_class regularity_bound;  // min{n(d-2)+1, d^n - C(n+d,n) + |rl| + n + 2}
  int observed_n0 = 0;
  bool n0_ok = false;  // n0 <= n+1 and n0 <= regularity bound + 1
  bool ok() const { return applicable && degree_ok && phi_ok && n0_ok; }
  bool operator==(const RlReport&) const = default;
};

/// Checks the RL-variety statements on the complement set; failures are
/// reported, not thrown.
RlReport rl_checks(const FiniteSubset& complement, int n, long d, std::size_t rl_size,
                   FoldOptions opts = {});

}  // namespace khlab
