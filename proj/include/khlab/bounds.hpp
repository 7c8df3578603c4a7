#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "khlab/gt.hpp"
#include "khlab/hilbert.hpp"
#include "khlab/subset.hpp"

namespace khlab {

struct BoundEntry {
  std::string name;
  std::optional<mpz_class> value;
  bool applicable = false;
  std::string hypothesis;
  bool operator==(const BoundEntry&) const = default;
};

struct BoundsFlags {
  bool cohen_macaulay = false;  // user-asserted, never verified
  bool smooth = false;          // user-asserted, never verified
};

struct EffectiveBounds {
  BoundEntry general;    // (n+1)(deg - |A| + n) + 1
  BoundEntry index_one;  // (n+1)! vol - max{3n+1, (n+1)(|A|-n) - 1}
};

EffectiveBounds bound_effective_khovanskii(const FiniteSubset& a);

/// (n+1)(K-1)+1 with K = K(A,B) = r(A).
BoundEntry bound_k_ab(const FiniteSubset& a, FoldOptions opts = {});

BoundEntry bound_hoa_stuckrad_cm(const FiniteSubset& a, const BoundsFlags& flags);

BoundEntry bound_hoa_stuckrad_general(const FiniteSubset& a);

BoundEntry bound_reduction_number(const FiniteSubset& a, FoldOptions opts = {});

struct FaceBound {
  mpz_class value;
  std::vector<std::size_t> face;
  bool operator==(const FaceBound&) const = default;
};

/// Upper bounds on r(A) (not on n0) from faces of the simplex whose lattice
/// points lie in the homogenization.
struct ReductionFaceBounds {
  std::optional<FaceBound> full_face;    // d^{n-i} + i - 1
  std::optional<FaceBound> point_count;  // (d^i - q) d^{n-i}
  bool operator==(const ReductionFaceBounds&) const = default;
};

ReductionFaceBounds bound_r_from_faces(const FiniteSubset& a);

BoundEntry bound_gt(const CongruenceSystem& sys);

struct BoundsReport {
  std::vector<BoundEntry> entries;
  std::optional<mpz_class> best_applicable;
  std::optional<int> observed_n0;
  bool observation_certified = false;
  bool sound = true;
  std::vector<std::string> violations;
  std::optional<int> reduction_number;
  ReductionFaceBounds face_bounds;
  bool operator==(const BoundsReport&) const = default;
};

/// Every bound that applies to A, plus gt when a system is given.
BoundsReport collect_bounds(const FiniteSubset& a, const BoundsFlags& flags,
                            const CongruenceSystem* sys = nullptr, FoldOptions opts = {});

/// Fills the observation fields of `rep` and checks every applicable bound
/// against the observed n0, and r(A) against the face bounds.
void check_soundness(BoundsReport& rep, const GrowthAnalysis& analysis);

/// collect_bounds checked against the observed n0 of `analysis`.
BoundsReport compare_report(const FiniteSubset& a, const GrowthAnalysis& analysis,
                            const BoundsFlags& flags, const CongruenceSystem* sys = nullptr,
                            FoldOptions opts = {});

}  // namespace khlab
