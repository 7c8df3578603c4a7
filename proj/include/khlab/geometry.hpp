#pragma once

#include <gmpxx.h>

#include <vector>

#include "khlab/subset.hpp"

namespace khlab {

/// Euclidean volume of conv(points) in the ambient space of the points.
/// Lower-dimensional hulls have volume 0; a hull in Z^0 has volume 1.
mpq_class hull_volume(const std::vector<LatticePoint>& points);

/// Vertices of conv(points), lexicographically sorted. Empty when the hull
/// is not full-dimensional.
std::vector<LatticePoint> hull_vertices(const std::vector<LatticePoint>& points);

struct SimplexCheck {
  bool is_simplex = false;
  std::vector<LatticePoint> vertices;
};

SimplexCheck is_simplex(const FiniteSubset& a);

struct FaceReport {
  std::vector<std::size_t> face;  // indices into {e_0, ..., e_n}
  mpz_class total;                // lattice points of degree d_A on the face
  mpz_class in_a;                 // how many of them lie in the homogenization
  bool full() const { return total == in_a; }
};

/// Counts degree-d_A lattice points supported on `face` and those lying in
/// the homogenization of A. Throws NotSimplicial without {0, d e_i} ⊆ A.
FaceReport face_lattice_point_report(const FiniteSubset& a,
                                     const std::vector<std::size_t>& face);

}  // namespace khlab
