#include "khlab/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "khlab/error.hpp"
#include "khlab/lattice.hpp"

namespace khlab {

namespace {

using Facet = std::vector<std::size_t>;

struct Hull {
  bool full = false;
  mpq_class volume = 0;
  std::vector<Facet> facets;
};

mpz_class factorial(std::size_t m) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), m);
  return f;
}

// Indices of an affinely independent subset of maximal size, chosen greedily
// in input order.
std::vector<std::size_t> affine_basis(const std::vector<LatticePoint>& pts) {
  const std::size_t m = pts.front().size();
  std::vector<std::size_t> chosen{0};
  std::vector<std::vector<mpz_class>> rows;
  std::vector<std::size_t> pivots;
  for (std::size_t k = 1; k < pts.size() && chosen.size() <= m; ++k) {
    std::vector<mpz_class> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = pts[k][i] - pts[0][i];
    for (std::size_t b = 0; b < rows.size(); ++b) {
      const std::size_t c = pivots[b];
      if (v[c] == 0) continue;
      const mpz_class f = v[c], g = rows[b][c];
      for (std::size_t i = 0; i < m; ++i) v[i] = g * v[i] - f * rows[b][i];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const mpz_class& x) { return x != 0; });
    if (nz == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    rows.push_back(std::move(v));
    chosen.push_back(k);
  }
  return chosen;
}

class Placer {
 public:
  explicit Placer(const std::vector<LatticePoint>& pts)
      : pts_(pts), m_(pts.front().size()) {}

  Hull run() {
    Hull h;
    const std::vector<std::size_t> init = affine_basis(pts_);
    if (init.size() != m_ + 1) return h;
    h.full = true;

    interior_.assign(m_, 0);
    for (std::size_t v : init)
      for (std::size_t i = 0; i < m_; ++i) interior_[i] += pts_[v][i];

    const mpz_class mfac = factorial(m_);
    for (std::size_t drop = 0; drop <= m_; ++drop) {
      Facet f;
      for (std::size_t j = 0; j <= m_; ++j)
        if (j != drop) f.push_back(init[j]);
      add_facet(std::move(f));
    }
    {
      Facet f(init.begin(), init.end() - 1);
      h.volume = mpq_class(abs(side(f, pts_[init.back()])), mfac);
    }

    std::set<std::size_t> placed(init.begin(), init.end());
    for (std::size_t p = 0; p < pts_.size(); ++p) {
      if (placed.count(p)) continue;
      std::vector<std::size_t> visible;
      for (std::size_t k = 0; k < facets_.size(); ++k) {
        const int s = sgn(side(facets_[k], pts_[p]));
        if (s != 0 && s != inside_sign_[k]) visible.push_back(k);
      }
      if (visible.empty()) continue;
      std::map<Facet, int> ridges;
      for (std::size_t k : visible) {
        const Facet& f = facets_[k];
        h.volume += mpq_class(abs(side(f, pts_[p])), mfac);
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
          Facet r;
          for (std::size_t j = 0; j < f.size(); ++j)
            if (j != drop) r.push_back(f[j]);
          ++ridges[r];
        }
      }
      std::vector<Facet> kept;
      std::vector<int> kept_sign;
      for (std::size_t k = 0, v = 0; k < facets_.size(); ++k) {
        if (v < visible.size() && visible[v] == k) {
          ++v;
          continue;
        }
        kept.push_back(std::move(facets_[k]));
        kept_sign.push_back(inside_sign_[k]);
      }
      facets_ = std::move(kept);
      inside_sign_ = std::move(kept_sign);
      for (const auto& [r, count] : ridges) {
        if (count != 1) continue;
        Facet f = r;
        f.push_back(p);
        std::sort(f.begin(), f.end());
        add_facet(std::move(f));
      }
      placed.insert(p);
    }
    h.volume.canonicalize();
    h.facets = facets_;
    return h;
  }

 private:
  // Determinant of (f_1 - f_0, ..., f_{m-1} - f_0, q - f_0).
  mpz_class side(const Facet& f, const LatticePoint& q) const {
    IntMatrix mat(m_, m_);
    const LatticePoint& base = pts_[f[0]];
    for (std::size_t r = 1; r < f.size(); ++r)
      for (std::size_t i = 0; i < m_; ++i)
        mat(r - 1, i) = mpz_class(static_cast<long>(pts_[f[r]][i])) - static_cast<long>(base[i]);
    for (std::size_t i = 0; i < m_; ++i)
      mat(m_ - 1, i) = mpz_class(static_cast<long>(q[i])) - static_cast<long>(base[i]);
    return determinant(mat);
  }

  // Same orientation test against the scaled centroid of the first simplex.
  int interior_side(const Facet& f) const {
    IntMatrix mat(m_, m_);
    const LatticePoint& base = pts_[f[0]];
    for (std::size_t r = 1; r < f.size(); ++r)
      for (std::size_t i = 0; i < m_; ++i)
        mat(r - 1, i) = mpz_class(static_cast<long>(pts_[f[r]][i])) - static_cast<long>(base[i]);
    for (std::size_t i = 0; i < m_; ++i)
      mat(m_ - 1, i) = interior_[i] - mpz_class(static_cast<long>(m_ + 1)) * static_cast<long>(base[i]);
    return sgn(determinant(mat));
  }

  void add_facet(Facet f) {
    const int s = interior_side(f);
    if (s == 0) throw Error(ErrorKind::Internal, "degenerate facet in placing triangulation");
    facets_.push_back(std::move(f));
    inside_sign_.push_back(s);
  }

  const std::vector<LatticePoint>& pts_;
  std::size_t m_;
  std::vector<mpz_class> interior_;
  std::vector<Facet> facets_;
  std::vector<int> inside_sign_;
};

std::vector<LatticePoint> sorted_unique(const std::vector<LatticePoint>& points) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "hull of an empty point set");
  std::vector<LatticePoint> pts = points;
  const std::size_t m = pts.front().size();
  for (const auto& p : pts)
    if (p.size() != m) throw Error(ErrorKind::InvalidInput, "points of mixed dimension");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Hull build(const std::vector<LatticePoint>& pts) {
  if (pts.front().empty()) return {true, 1, {}};
  return Placer(pts).run();
}

}  // namespace

mpq_class hull_volume(const std::vector<LatticePoint>& points) {
  return build(sorted_unique(points)).volume;
}

std::vector<LatticePoint> hull_vertices(const std::vector<LatticePoint>& points) {
  const std::vector<LatticePoint> pts = sorted_unique(points);
  if (pts.front().empty()) return pts;
  const Hull h = build(pts);
  if (!h.full) return {};
  std::set<std::size_t> candidates;
  for (const auto& f : h.facets) candidates.insert(f.begin(), f.end());
  std::vector<LatticePoint> out;
  for (std::size_t c : candidates) {
    std::vector<LatticePoint> rest;
    rest.reserve(pts.size() - 1);
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k != c) rest.push_back(pts[k]);
    if (build(rest).volume < h.volume) out.push_back(pts[c]);
  }
  return out;
}

SimplexCheck is_simplex(const FiniteSubset& a) {
  SimplexCheck out;
  std::vector<LatticePoint> v = hull_vertices(a.points());
  if (v.size() == a.dim() + 1) {
    out.is_simplex = true;
    out.vertices = std::move(v);
  }
  return out;
}

FaceReport face_lattice_point_report(const FiniteSubset& a,
                                     const std::vector<std::size_t>& face) {
  if (!a.is_simplicial())
    throw Error(ErrorKind::NotSimplicial,
                "not simplicial: A must contain 0 and every d_A*e_i");
  std::vector<std::size_t> f = face;
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  if (f.empty() || f.back() > a.dim())
    throw Error(ErrorKind::InvalidInput, "face must be a nonempty subset of {e_0..e_n}");

  FaceReport r;
  r.face = f;
  const std::size_t i = f.size() - 1;
  mpz_bin_uiui(r.total.get_mpz_t(), static_cast<unsigned long>(a.degree()) + i, i);
  std::vector<bool> on_face(a.dim() + 1, false);
  for (std::size_t k : f) on_face[k] = true;
  for (const auto& p : homogenize(a).points) {
    bool supported = true;
    for (std::size_t k = 0; k < p.size() && supported; ++k)
      supported = on_face[k] || p[k] == 0;
    if (supported) ++r.in_a;
  }
  return r;
}

}  // namespace khlab
