#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "khlab/polynomial.hpp"
#include "khlab/subset.hpp"
#include "khlab/sumset.hpp"

namespace khlab {

/// n = C(m_d, d) + C(m_{d-1}, d-1) + ... + C(m_e, e), m_d > ... > m_e >= e >= 1.
struct MacaulayExpansion {
  unsigned long d = 0;
  std::vector<std::pair<mpz_class, unsigned long>> terms;  // (m_j, j)
};

MacaulayExpansion macaulay_expand(const mpz_class& n, unsigned long d);

/// n^{<d>} = C(m_d + 1, d + 1) + ... + C(m_e + 1, e + 1).
mpz_class macaulay_bound(const mpz_class& n, unsigned long d);

struct GrowthCheck {
  bool ok = true;
  /// Index t+1 of the first value exceeding phi(t)^{<t>}.
  std::optional<std::size_t> first_violation;
};

GrowthCheck check_macaulay_growth(const std::vector<mpz_class>& phi);

/// p(t) = sum_j C(t + a_j - (j-1), a_j) with a_1 >= a_2 >= ... >= a_s >= 0,
/// kept as runs (exponent, multiplicity) because s can be very large.
struct GotzmannDevelopment {
  std::vector<std::pair<unsigned long, mpz_class>> runs;
  mpz_class s = 0;

  /// Exponent list a_1..a_s; throws InvalidInput when s exceeds `limit`.
  std::vector<unsigned long> exponents(std::size_t limit = 1 << 20) const;
};

/// Throws NotHilbertPolynomial when p has no development.
GotzmannDevelopment gotzmann_development(const RationalPolynomial& p);

/// A cardinality sequence that can be extended on demand.
class PhiSource {
 public:
  virtual ~PhiSource() = default;
  /// phi(t); may throw ResourceCapError.
  virtual mpz_class value(int t) = 0;
};

/// phi from a precomputed list; asking past its end throws ResourceCapError.
class VectorPhiSource : public PhiSource {
 public:
  explicit VectorPhiSource(std::vector<mpz_class> values) : values_(std::move(values)) {}
  mpz_class value(int t) override;

 private:
  std::vector<mpz_class> values_;
};

/// phi from incremental sumset construction.
class FoldPhiSource : public PhiSource {
 public:
  explicit FoldPhiSource(const FiniteSubset& a, FoldOptions opts = {})
      : builder_(a, opts), values_{1} {}
  mpz_class value(int t) override;

 private:
  SumsetBuilder builder_;
  std::vector<mpz_class> values_;
};

enum class Certification { GotzmannExact, BoundCertified, WindowHeuristic };

std::string to_string(Certification c);

struct CertifyPolicy {
  Certification kind = Certification::GotzmannExact;
  /// Extra values checked by the window policy and by fallbacks.
  int window = 8;
  /// A proven upper bound on n0, used by the bounds policy and as the
  /// first fallback when Gotzmann certification is declined.
  std::optional<long> bound;

  static CertifyPolicy gotzmann(std::optional<long> fallback_bound = {}) {
    return {Certification::GotzmannExact, 8, fallback_bound};
  }
  static CertifyPolicy bounds(long b) { return {Certification::BoundCertified, 8, b}; }
  static CertifyPolicy windowed(int w) { return {Certification::WindowHeuristic, w, {}}; }
};

struct FitOptions {
  int t_max = 64;
  /// Agreeing values required beyond the r+1 interpolation points.
  int stable_window = 3;
  /// Gotzmann certification is declined when s exceeds this.
  long gotzmann_ceiling = 512;
  /// ... or when p(s+1) exceeds this.
  std::size_t max_points = kDefaultMaxPoints;
};

struct GrowthAnalysis {
  std::vector<mpz_class> phi_values;  // phi(0..horizon)
  RationalPolynomial polynomial;
  int n0 = 0;
  Certification certification = Certification::WindowHeuristic;
  int window = 0;              // extra values checked, window policy only
  std::optional<long> bound;   // bound used, bounds policy only
  std::optional<GotzmannDevelopment> gotzmann;
  std::string note;
  mpz_class degree;            // r! times the leading coefficient

  int horizon() const { return static_cast<int>(phi_values.size()) - 1; }
};

/// Fits the degree-r polynomial through the last r+1 values, extends until
/// the fit is stable, then certifies it under `policy`.
GrowthAnalysis fit_khovanskii(PhiSource& phi, int r, const CertifyPolicy& policy,
                              const FitOptions& opts = {});

/// n! vol(conv A) / [Z^n : Z(A - A)]. Throws RankDeficient below full rank.
mpz_class degree_via_volume(const FiniteSubset& a);

/// r! vol(conv(Ā ∪ {0})) / Δ_r with r = rank of the homogenized matrix,
/// after reducing A to full rank.
mpz_class degree_via_snf(const FiniteSubset& a);

struct ClosedForm {
  RationalPolynomial polynomial;
  int n0 = 0;
  mpz_class degree;
};

/// Closed forms for full-rank A with |A| = n+1 or n+2; empty otherwise.
std::optional<ClosedForm> closed_form_small(const FiniteSubset& a);

}  // namespace khlab
