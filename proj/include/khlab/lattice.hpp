#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "khlab/subset.hpp"

namespace khlab {

/// Dense integer matrix over GMP integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  /// Matrix whose columns are the given points.
  static IntMatrix from_columns(const std::vector<LatticePoint>& cols,
                                std::size_t rows);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const mpz_class& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Determinant of a square matrix (fraction-free Bareiss elimination).
mpz_class determinant(const IntMatrix& m);

struct SnfResult {
  /// min(rows, cols) nonnegative invariant factors, each dividing the next
  /// nonzero one; zeros trail.
  std::vector<mpz_class> diagonal;
  std::size_t rank = 0;
  IntMatrix left;   // U, rows x rows
  IntMatrix right;  // V, cols x cols; U * M * V == diag
};

SnfResult smith_normal_form(const IntMatrix& m);

/// GCD of all r x r minors, read off the invariant factors. Throws
/// RankDeficient when every r x r minor vanishes.
mpz_class minor_gcd(const IntMatrix& m, std::size_t r);

struct DifferenceLattice {
  std::size_t rank = 0;
  /// [Z^n : Z(A - A)]; empty when the rank is below n.
  std::optional<mpz_class> index;
};

DifferenceLattice difference_lattice(const FiniteSubset& a);

struct FullRankReduction {
  FiniteSubset subset;
  std::size_t rank = 0;
  /// r x n integer map; the image of a is transform * (a - base), normalized.
  IntMatrix transform;
  LatticePoint base;
};

/// Injective affine lattice map of A into Z^r, r = rank Z(A - A).
FullRankReduction reduce_to_full_rank(const FiniteSubset& a);

}  // namespace khlab
