#include "khlab/sumset.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <queue>
#include <set>
#include <string>
#include <thread>

#include "khlab/error.hpp"

namespace khlab {

std::size_t max_points_from_env() {
  if (const char* env = std::getenv("KHLAB_MAX_POINTS")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidInput,
                std::string("KHLAB_MAX_POINTS is not a positive integer: ") + env);
  }
  return kDefaultMaxPoints;
}

namespace {

bool lex_less(std::span<const Coord> a, std::span<const Coord> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Sorted union of {k + s : k in base} over the given shifts, deduplicated.
std::vector<std::uint64_t> merge_shifted(const std::vector<std::uint64_t>& base,
                                         std::span<const std::uint64_t> shifts,
                                         std::size_t cap, int level) {
  using Head = std::pair<std::uint64_t, std::size_t>;  // value, shift index
  std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
  std::vector<std::size_t> pos(shifts.size(), 0);
  for (std::size_t g = 0; g < shifts.size(); ++g)
    if (!base.empty()) heap.emplace(base[0] + shifts[g], g);

  std::vector<std::uint64_t> out;
  out.reserve(std::min(cap, base.size() * 2 + 16));
  while (!heap.empty()) {
    auto [v, g] = heap.top();
    heap.pop();
    if (out.empty() || out.back() != v) {
      if (out.size() == cap)
        throw ResourceCapError("sumset level " + std::to_string(level + 1) +
                                   " exceeds the point ceiling of " +
                                   std::to_string(cap),
                               level);
      out.push_back(v);
    }
    if (++pos[g] < base.size()) heap.emplace(base[pos[g]] + shifts[g], g);
  }
  return out;
}

std::vector<std::uint64_t> merge_two(const std::vector<std::uint64_t>& a,
                                     const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

bool PointSet::contains(std::span<const Coord> p) const {
  if (p.size() != dim_) return false;
  std::size_t lo = 0, hi = count_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less((*this)[mid], p))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < count_ && std::equal(p.begin(), p.end(), (*this)[lo].begin());
}

std::vector<LatticePoint> PointSet::to_vector() const {
  std::vector<LatticePoint> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    auto s = (*this)[i];
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

SumsetBuilder::SumsetBuilder(const FiniteSubset& a, FoldOptions opts)
    : gens_(a.points()), dim_(a.dim()), opts_(opts) {
  for (const auto& g : gens_)
    for (Coord c : g) {
      if (c < 0)
        throw Error(ErrorKind::InvalidInput, "sumset generators must be normalized");
      max_coord_ = std::max(max_coord_, c);
    }
  field_bits_ = dim_ == 0 ? 0 : std::min<unsigned>(62, 64 / static_cast<unsigned>(dim_));
  packed_ = packable(1);
  if (packed_)
    keys_ = {0};
  else
    flat_.assign(dim_, 0);
}

bool SumsetBuilder::packable(int level) const {
  if (dim_ == 0) return true;
  const __int128 top = static_cast<__int128>(level) * max_coord_;
  return top < (static_cast<__int128>(1) << field_bits_);
}

void SumsetBuilder::unpack() {
  const PointSet ps = points();
  flat_.clear();
  flat_.reserve(ps.size() * dim_);
  for (std::size_t i = 0; i < ps.size(); ++i)
    flat_.insert(flat_.end(), ps[i].begin(), ps[i].end());
  keys_.clear();
  keys_.shrink_to_fit();
  packed_ = false;
}

void SumsetBuilder::advance() {
  if (packed_ && !packable(level_ + 1)) unpack();
  if (packed_)
    advance_packed();
  else
    advance_generic();
  ++level_;
}

void SumsetBuilder::advance_packed() {
  std::vector<std::uint64_t> shifts;
  shifts.reserve(gens_.size());
  for (const auto& g : gens_) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < dim_; ++i)
      k |= static_cast<std::uint64_t>(g[i]) << (field_bits_ * (dim_ - 1 - i));
    shifts.push_back(k);
  }
  const std::size_t cap = opts_.max_points;
  const unsigned workers =
      std::max(1u, std::min<unsigned>(opts_.threads, static_cast<unsigned>(shifts.size())));
  if (workers == 1) {
    keys_ = merge_shifted(keys_, shifts, cap, level_);
  } else {
    std::vector<std::vector<std::uint64_t>> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = shifts.size() * w / workers;
      const std::size_t hi = shifts.size() * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] {
        try {
          parts[w] = merge_shifted(keys_, std::span(shifts).subspan(lo, hi - lo), cap, level_);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    std::vector<std::uint64_t> acc = std::move(parts[0]);
    for (unsigned w = 1; w < workers; ++w) acc = merge_two(acc, parts[w]);
    if (acc.size() > cap)
      throw ResourceCapError("sumset level " + std::to_string(level_ + 1) +
                                 " exceeds the point ceiling of " + std::to_string(cap),
                             level_);
    keys_ = std::move(acc);
  }
  size_ = keys_.size();
}

void SumsetBuilder::advance_generic() {
  std::vector<LatticePoint> next;
  next.reserve(size_ * gens_.size());
  for (std::size_t p = 0; p < size_; ++p) {
    for (const auto& g : gens_) {
      LatticePoint q(dim_);
      for (std::size_t i = 0; i < dim_; ++i)
        if (__builtin_add_overflow(flat_[p * dim_ + i], g[i], &q[i]))
          throw Error(ErrorKind::InvalidInput, "sumset coordinates overflow 64 bits");
      next.push_back(std::move(q));
    }
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  if (next.size() > opts_.max_points)
    throw ResourceCapError("sumset level " + std::to_string(level_ + 1) +
                               " exceeds the point ceiling of " +
                               std::to_string(opts_.max_points),
                           level_);
  flat_.clear();
  for (const auto& q : next) flat_.insert(flat_.end(), q.begin(), q.end());
  size_ = next.size();
}

bool SumsetBuilder::contains(std::span<const Coord> p) const {
  if (p.size() != dim_) return false;
  if (!packed_) return points().contains(p);
  std::uint64_t k = 0;
  const Coord limit = dim_ == 0 ? 1 : (Coord{1} << field_bits_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (p[i] < 0 || p[i] >= limit) return false;
    k |= static_cast<std::uint64_t>(p[i]) << (field_bits_ * (dim_ - 1 - i));
  }
  return std::binary_search(keys_.begin(), keys_.end(), k);
}

PointSet SumsetBuilder::points() const {
  if (!packed_) return PointSet(dim_, flat_, size_);
  std::vector<Coord> flat;
  flat.reserve(keys_.size() * dim_);
  const std::uint64_t mask = field_bits_ >= 64 ? ~0ULL : ((1ULL << field_bits_) - 1);
  for (std::uint64_t k : keys_)
    for (std::size_t i = 0; i < dim_; ++i)
      flat.push_back(static_cast<Coord>((k >> (field_bits_ * (dim_ - 1 - i))) & mask));
  return PointSet(dim_, std::move(flat), keys_.size());
}

std::vector<SumsetLevel> fold(const FiniteSubset& a, int t_max, FoldOptions opts) {
  if (t_max < 0) throw Error(ErrorKind::InvalidInput, "t_max must be >= 0");
  std::vector<SumsetLevel> levels;
  SumsetBuilder b(a, opts);
  levels.push_back({0, b.points()});
  for (int t = 1; t <= t_max; ++t) {
    b.advance();
    levels.push_back({t, b.points()});
  }
  return levels;
}

std::vector<std::uint64_t> phi_values(const FiniteSubset& a, int t_max, FoldOptions opts) {
  if (t_max < 0) throw Error(ErrorKind::InvalidInput, "t_max must be >= 0");
  std::vector<std::uint64_t> out{1};
  SumsetBuilder b(a, opts);
  for (int t = 1; t <= t_max; ++t) {
    b.advance();
    out.push_back(b.cardinality());
  }
  return out;
}

std::uint64_t phi(const FiniteSubset& a, int t, FoldOptions opts) {
  if (t < 0) throw Error(ErrorKind::InvalidInput, "t must be >= 0");
  return phi_values(a, t, opts).back();
}

Membership semigroup_member(const FiniteSubset& a, const LatticePoint& q) {
  if (!a.contains_origin())
    throw Error(ErrorKind::InvalidInput, "0 \xe2\x88\x89 A");
  if (q.size() != a.dim())
    throw Error(ErrorKind::InvalidInput, "query point has the wrong dimension");
  for (Coord c : q)
    if (c < 0) return {};
  const Coord budget = coordinate_sum(q);

  // Partial sums never leave the box [0, q] since generators are nonnegative.
  std::set<LatticePoint> reached{LatticePoint(a.dim(), 0)};
  if (reached.count(q)) return {true, 0};
  std::vector<LatticePoint> frontier{LatticePoint(a.dim(), 0)};
  for (Coord t = 1; t <= budget && !frontier.empty(); ++t) {
    std::vector<LatticePoint> next;
    for (const auto& p : frontier)
      for (const auto& g : a.points()) {
        LatticePoint s(p);
        bool inside = true;
        for (std::size_t i = 0; i < s.size() && inside; ++i) {
          s[i] += g[i];
          inside = s[i] <= q[i];
        }
        if (inside && reached.insert(s).second) next.push_back(std::move(s));
      }
    if (reached.count(q)) return {true, static_cast<int>(t)};
    frontier = std::move(next);
  }
  return {};
}

namespace {

void require_simplicial(const FiniteSubset& a) {
  if (!a.is_simplicial())
    throw Error(ErrorKind::NotSimplicial,
                "not simplicial: A must contain 0 and every d_A*e_i");
}

// True when every point of `upper` (level r+1) lies in `lower` (level r) or
// in v_i + lower for some vertex v_i = d e_i.
bool level_identity_holds(const PointSet& upper, const PointSet& lower, Coord d) {
  LatticePoint tmp(upper.dim());
  for (std::size_t k = 0; k < upper.size(); ++k) {
    auto p = upper[k];
    if (lower.contains(p)) continue;
    bool found = false;
    for (std::size_t i = 0; i < p.size() && !found; ++i) {
      if (p[i] < d) continue;
      std::copy(p.begin(), p.end(), tmp.begin());
      tmp[i] -= d;
      found = lower.contains(tmp);
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

int reduction_number(const FiniteSubset& a, int r_cap, FoldOptions opts) {
  require_simplicial(a);
  SumsetBuilder b(a, opts);
  b.advance();
  PointSet lower = b.points();  // level 1
  b.advance();
  PointSet upper = b.points();  // level 2
  for (int r = 1; r <= r_cap; ++r) {
    if (level_identity_holds(upper, lower, a.degree())) {
      b.advance();
      if (!level_identity_holds(b.points(), upper, a.degree()))
        throw Error(ErrorKind::Internal,
                    "reduction identity failed to persist at r+1 = " + std::to_string(r + 1));
      return r;
    }
    lower = std::move(upper);
    b.advance();
    upper = b.points();
  }
  throw ResourceCapError("reduction number exceeds the cap of " + std::to_string(r_cap),
                         b.level());
}

std::vector<HeightedPoint> b_minimal_elements(const FiniteSubset& a, int t_cap,
                                              FoldOptions opts) {
  require_simplicial(a);
  if (t_cap < 1) throw Error(ErrorKind::InvalidInput, "t_cap must be >= 1");
  const Coord d = a.degree();
  std::vector<HeightedPoint> out{{LatticePoint(a.dim(), 0), 0}};
  SumsetBuilder b(a, opts);
  PointSet prev = b.points();
  LatticePoint tmp(a.dim());
  for (int t = 1; t <= t_cap; ++t) {
    b.advance();
    PointSet cur = b.points();
    for (std::size_t k = 0; k < cur.size(); ++k) {
      auto p = cur[k];
      if (prev.contains(p)) continue;  // removing e_0 stays in the semigroup
      bool minimal = true;
      for (std::size_t i = 0; i < p.size() && minimal; ++i) {
        if (p[i] < d) continue;
        std::copy(p.begin(), p.end(), tmp.begin());
        tmp[i] -= d;
        minimal = !prev.contains(tmp);
      }
      if (minimal) out.push_back({LatticePoint(p.begin(), p.end()), t});
    }
    prev = std::move(cur);
  }
  return out;
}

}  // namespace khlab
