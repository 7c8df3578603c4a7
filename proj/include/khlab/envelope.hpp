#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "khlab/bounds.hpp"
#include "khlab/gt.hpp"
#include "khlab/hilbert.hpp"
#include "khlab/subset.hpp"
#include "khlab/sumset.hpp"

namespace khlab {

struct AnalyzeOptions {
  int t_max = 64;
  Certification certify = Certification::GotzmannExact;
  int window = 8;
  BoundsFlags flags;
  FoldOptions fold;
};

/// "gotzmann", "bounds" or "window=W". Throws InvalidInput otherwise.
void parse_certify(const std::string& text, AnalyzeOptions& opts);

struct PolynomialRecord {
  std::vector<mpq_class> coefficients;  // ascending powers of t
  std::string pretty;
  bool operator==(const PolynomialRecord&) const = default;
};

PolynomialRecord record(const RationalPolynomial& p);

struct GotzmannRun {
  unsigned long exponent = 0;
  mpz_class count;
  bool operator==(const GotzmannRun&) const = default;
};

struct FitRecord {
  std::vector<mpz_class> phi_values;
  PolynomialRecord polynomial;
  int n0 = 0;
  std::string certification;
  std::optional<int> window;
  std::optional<long> bound;
  std::optional<mpz_class> gotzmann_s;
  std::vector<GotzmannRun> gotzmann_runs;
  std::string note;
  mpz_class degree;
  bool operator==(const FitRecord&) const = default;
};

struct ClosedFormRecord {
  PolynomialRecord polynomial;
  int n0 = 0;
  mpz_class degree;
  bool agrees = false;
  bool operator==(const ClosedFormRecord&) const = default;
};

struct FormulaCheck {
  bool applicable = false;
  std::string note;  // shape mismatch reason when not applicable
  std::optional<PolynomialRecord> polynomial;
  std::optional<long> theta;
  bool agrees = false;
  bool operator==(const FormulaCheck&) const = default;
};

struct RlRecord {
  std::vector<LatticePoint> rl;
  std::size_t complement_size = 0;
  RlReport report;
  bool operator==(const RlRecord&) const = default;
};

struct GtRecord {
  std::size_t level_one_size = 0;
  std::vector<mpz_class> dp_counts;
  std::vector<mpz_class> enumerated_counts;  // may stop early at the point ceiling
  std::vector<mpz_class> fold_counts;
  bool counts_agree = false;
  FormulaCheck surface;
  FormulaCheck prime;
  int n0_bound = 0;  // n + 1
  bool n0_within_bound = false;
  std::optional<RlRecord> rl;
  bool operator==(const GtRecord&) const = default;
};

struct AnalysisEnvelope {
  std::string kind;  // "subset" or "gt"
  std::vector<LatticePoint> input_points;
  std::optional<CongruenceSystem> system;

  std::size_t dim = 0;
  std::vector<LatticePoint> points;  // normalized
  LatticePoint translation;
  Coord degree_bound = 0;            // d_A
  bool simplicial = false;

  std::size_t rank = 0;
  std::optional<mpz_class> index;

  mpq_class volume;
  std::optional<mpz_class> degree_volume;
  mpz_class degree_snf;
  bool degrees_agree = false;

  FitRecord fit;
  bool macaulay_ok = false;
  std::optional<std::size_t> macaulay_first_violation;
  bool gotzmann_ok = false;
  bool leading_matches_degree = false;

  std::optional<ClosedFormRecord> closed_form;
  BoundsReport bounds;
  std::optional<GtRecord> gt;

  double elapsed_ms = 0;

  bool operator==(const AnalysisEnvelope&) const = default;
};

AnalysisEnvelope analyze_subset(const std::vector<LatticePoint>& raw, const AnalyzeOptions& opts);

AnalysisEnvelope analyze_gt(const CongruenceSystem& sys, const AnalyzeOptions& opts,
                            bool with_rl);

enum class OutputFormat { Json, Csv, Text };

/// "json", "csv" or "text".
OutputFormat parse_format(const std::string& s);

std::string to_json(const AnalysisEnvelope& env, bool with_timing = true);

AnalysisEnvelope envelope_from_json(const std::string& text);

std::string render(const AnalysisEnvelope& env, OutputFormat fmt, bool with_timing = true);

}  // namespace khlab
