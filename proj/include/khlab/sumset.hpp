#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "khlab/subset.hpp"

namespace khlab {

inline constexpr std::size_t kDefaultMaxPoints = 10'000'000;

struct FoldOptions {
  /// Ceiling on the number of points in one level.
  std::size_t max_points = kDefaultMaxPoints;
  /// Worker threads used to build a level; 0 or 1 means sequential.
  unsigned threads = 1;
};

/// Reads KHLAB_MAX_POINTS when set, otherwise kDefaultMaxPoints.
std::size_t max_points_from_env();

/// Lexicographically sorted, duplicate-free point array with flat storage.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  PointSet(std::size_t dim, std::vector<Coord> flat, std::size_t count)
      : dim_(dim), count_(count), coords_(std::move(flat)) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return count_; }
  std::span<const Coord> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  bool contains(std::span<const Coord> p) const;
  std::vector<LatticePoint> to_vector() const;

  bool operator==(const PointSet& o) const = default;

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<Coord> coords_;
};

struct SumsetLevel {
  int t = 0;
  PointSet points;
  std::size_t cardinality() const { return points.size(); }
};

/// Incremental t-fold sumset construction: level t+1 is the deduplicated
/// union of level t shifted by each generator. Coordinates are packed into
/// a single 64-bit key while they fit; wider sets fall back to
/// lexicographic merging of coordinate vectors.
class SumsetBuilder {
 public:
  explicit SumsetBuilder(const FiniteSubset& a, FoldOptions opts = {});

  int level() const noexcept { return level_; }
  std::size_t cardinality() const noexcept { return size_; }

  /// Builds the next level. Throws ResourceCapError past the ceiling.
  void advance();

  bool contains(std::span<const Coord> p) const;
  PointSet points() const;

 private:
  bool packable(int level) const;
  void unpack();
  void advance_packed();
  void advance_generic();

  std::vector<LatticePoint> gens_;
  std::size_t dim_;
  Coord max_coord_ = 0;
  FoldOptions opts_;
  int level_ = 0;
  std::size_t size_ = 1;
  unsigned field_bits_ = 0;
  bool packed_ = true;
  std::vector<std::uint64_t> keys_;
  std::vector<Coord> flat_;
};

/// Levels 0..t_max with their point sets.
std::vector<SumsetLevel> fold(const FiniteSubset& a, int t_max,
                              FoldOptions opts = {});

/// |tA| for t = 0..t_max.
std::vector<std::uint64_t> phi_values(const FiniteSubset& a, int t_max,
                                      FoldOptions opts = {});

std::uint64_t phi(const FiniteSubset& a, int t, FoldOptions opts = {});

struct Membership {
  bool member = false;
  std::optional<int> height;
};

/// Whether q lies in the semigroup generated by A, with its height. A must
/// contain 0.
Membership semigroup_member(const FiniteSubset& a, const LatticePoint& q);

/// Least r >= 1 with (r+1)Ā = {e_0..e_n} + rĀ; the identity is re-checked
/// at r+1. Throws NotSimplicial unless A holds 0 and every d_A e_i.
int reduction_number(const FiniteSubset& a, int r_cap = 64,
                     FoldOptions opts = {});

struct HeightedPoint {
  LatticePoint point;
  int height = 0;
  bool operator==(const HeightedPoint&) const = default;
};

/// B-minimal elements of the semigroup of Ā (B = {e_0..e_n}) whose height is
/// at most t_cap, reported by their dehomogenized point. An element of
/// height h is B-minimal when it leaves (h-1)Ā after removing any e_i.
std::vector<HeightedPoint> b_minimal_elements(const FiniteSubset& a, int t_cap,
                                              FoldOptions opts = {});

}  // namespace khlab
