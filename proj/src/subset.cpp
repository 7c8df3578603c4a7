#include "khlab/subset.hpp"

#include <algorithm>
#include <sstream>

#include "khlab/error.hpp"

namespace khlab {

std::string to_string(std::span<const Coord> p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    os << p[i];
  }
  os << ')';
  return os.str();
}

Coord coordinate_sum(std::span<const Coord> p) {
  Coord s = 0;
  for (Coord c : p) {
    if (__builtin_add_overflow(s, c, &s))
      throw Error(ErrorKind::InvalidInput, "coordinate sum overflows 64 bits");
  }
  return s;
}

FiniteSubset FiniteSubset::normalize(const std::vector<LatticePoint>& raw) {
  if (raw.empty()) throw Error(ErrorKind::InvalidInput, "empty subset");
  const std::size_t n = raw.front().size();
  for (const auto& p : raw) {
    if (p.size() != n)
      throw Error(ErrorKind::InvalidInput,
                  "points of mixed dimension (" + std::to_string(n) + " and " +
                      std::to_string(p.size()) + ")");
  }

  LatticePoint lo = raw.front();
  for (const auto& p : raw)
    for (std::size_t i = 0; i < n; ++i) lo[i] = std::min(lo[i], p[i]);

  FiniteSubset out;
  out.dim_ = n;
  out.translation_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (__builtin_sub_overflow(Coord{0}, lo[i], &out.translation_[i]))
      throw Error(ErrorKind::InvalidInput, "translation overflows 64 bits");
  }
  out.points_.reserve(raw.size());
  for (const auto& p : raw) {
    LatticePoint q(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (__builtin_sub_overflow(p[i], lo[i], &q[i]))
        throw Error(ErrorKind::InvalidInput, "coordinate span overflows 64 bits");
    }
    out.points_.push_back(std::move(q));
  }
  std::sort(out.points_.begin(), out.points_.end());
  out.points_.erase(std::unique(out.points_.begin(), out.points_.end()),
                    out.points_.end());
  for (const auto& p : out.points_)
    out.degree_ = std::max(out.degree_, coordinate_sum(p));
  return out;
}

bool FiniteSubset::contains(const LatticePoint& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

bool FiniteSubset::contains_origin() const {
  return contains(LatticePoint(dim_, 0));
}

bool FiniteSubset::is_simplicial() const {
  if (!contains_origin()) return false;
  for (std::size_t i = 0; i < dim_; ++i) {
    LatticePoint v(dim_, 0);
    v[i] = degree_;
    if (!contains(v)) return false;
  }
  return true;
}

HomogenizedSubset homogenize(const FiniteSubset& a) {
  HomogenizedSubset h;
  h.degree = a.degree();
  h.points.reserve(a.size());
  for (const auto& p : a.points()) {
    LatticePoint q;
    q.reserve(p.size() + 1);
    q.push_back(a.degree() - coordinate_sum(p));
    q.insert(q.end(), p.begin(), p.end());
    h.points.push_back(std::move(q));
  }
  return h;
}

FiniteSubset dehomogenize(const std::vector<LatticePoint>& bar) {
  std::vector<LatticePoint> raw;
  raw.reserve(bar.size());
  for (const auto& y : bar) {
    if (y.empty())
      throw Error(ErrorKind::InvalidInput, "cannot dehomogenize a 0-dimensional point");
    raw.emplace_back(y.begin() + 1, y.end());
  }
  return FiniteSubset::normalize(raw);
}

}  // namespace khlab
