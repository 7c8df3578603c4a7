#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace khlab {

using Coord = std::int64_t;
using LatticePoint = std::vector<Coord>;

std::string to_string(std::span<const Coord> p);

/// A finite subset of Z^n kept in normal form: translated so that every
/// coordinate attains its minimum 0 on some point. Points are sorted
/// lexicographically and deduplicated.
class FiniteSubset {
 public:
  /// Translates `raw` by minus its componentwise minimum. Throws on empty
  /// input or mixed dimensions.
  static FiniteSubset normalize(const std::vector<LatticePoint>& raw);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<LatticePoint>& points() const noexcept { return points_; }

  /// Maximum coordinate sum; 0 iff the set is {0}.
  Coord degree() const noexcept { return degree_; }

  /// The vector added to the raw input (minus the componentwise minimum).
  const LatticePoint& translation() const noexcept { return translation_; }

  bool contains(const LatticePoint& p) const;
  bool contains_origin() const;

  /// 0 and every degree()*e_i belong to the set.
  bool is_simplicial() const;

  bool operator==(const FiniteSubset& o) const {
    return dim_ == o.dim_ && points_ == o.points_;
  }

 private:
  FiniteSubset() = default;

  std::size_t dim_ = 0;
  std::vector<LatticePoint> points_;
  Coord degree_ = 0;
  LatticePoint translation_;
};

/// Homogenization into the hyperplane y_0 + ... + y_n = d_A of Z^{n+1}.
struct HomogenizedSubset {
  std::vector<LatticePoint> points;
  Coord degree = 0;
};

HomogenizedSubset homogenize(const FiniteSubset& a);

/// Drops the first coordinate of each point of `bar` and normalizes.
FiniteSubset dehomogenize(const std::vector<LatticePoint>& bar);

Coord coordinate_sum(std::span<const Coord> p);

}  // namespace khlab
