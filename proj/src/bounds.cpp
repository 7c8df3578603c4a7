#include "khlab/bounds.hpp"

#include <algorithm>

#include "khlab/error.hpp"
#include "khlab/geometry.hpp"
#include "khlab/lattice.hpp"
#include "khlab/sumset.hpp"

namespace khlab {

namespace {

void require_simplicial(const FiniteSubset& a) {
  if (!a.is_simplicial())
    throw Error(ErrorKind::NotSimplicial,
                "not simplicial: A must contain 0 and every d_A*e_i");
}

void require_positive_dim(const FiniteSubset& a) {
  if (a.dim() == 0) throw Error(ErrorKind::InvalidInput, "bound needs n >= 1");
}

mpz_class power(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BoundEntry k_ab_from(std::size_t n, int r) {
  BoundEntry e{"k-ab", {}, true, "simplicial; K(A,B) = r(A) = " + std::to_string(r)};
  e.value = mpz_class(static_cast<unsigned long>(n + 1)) * (r - 1) + 1;
  return e;
}

BoundEntry reduction_from(std::size_t n, Coord d, int r) {
  BoundEntry e{"reduction-number", {}, true, "simplicial; r(A) = " + std::to_string(r)};
  if (r <= 1) {
    e.value = mpz_class(2);
    return e;
  }
  const mpz_class n1(static_cast<unsigned long>(n + 1));
  const mpz_class first = n1 * (r - 1) - static_cast<unsigned long>(n) + 2;
  const mpz_class second = n1 * r - ceil_div(n1 * r, mpz_class(static_cast<long>(d))) + 1;
  e.value = std::min(first, second);
  return e;
}

template <class F>
BoundEntry guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const ResourceCapError&) {
    throw;
  } catch (const Error& e) {
    return {name, {}, false, e.what()};
  }
}

}  // namespace

EffectiveBounds bound_effective_khovanskii(const FiniteSubset& a) {
  EffectiveBounds out;
  out.general.name = "effective-khovanskii";
  out.index_one.name = "effective-khovanskii-index-one";
  const std::size_t n = a.dim();
  if (n == 0 || !is_simplex(a).is_simplex) {
    out.general.hypothesis = out.index_one.hypothesis = "conv(A) is not an n-simplex";
    return out;
  }
  const mpz_class n1(static_cast<unsigned long>(n + 1));
  const mpz_class size(static_cast<unsigned long>(a.size()));
  const mpz_class deg = degree_via_volume(a);
  out.general.applicable = true;
  out.general.hypothesis = "conv(A) is an n-simplex; degree " + deg.get_str();
  out.general.value = n1 * (deg - size + static_cast<unsigned long>(n)) + 1;

  const DifferenceLattice dl = difference_lattice(a);
  if (*dl.index != 1) {
    out.index_one.hypothesis = "Z(A-A) has index " + dl.index->get_str() + " in Z^n";
    return out;
  }
  mpz_class fac;
  mpz_fac_ui(fac.get_mpz_t(), n + 1);
  const mpq_class scaled = fac * hull_volume(a.points());
  const mpz_class m = std::max(mpz_class(3 * static_cast<unsigned long>(n) + 1),
                               mpz_class(n1 * (size - static_cast<unsigned long>(n)) - 1));
  out.index_one.applicable = true;
  out.index_one.hypothesis = "conv(A) is an n-simplex and Z(A-A) = Z^n";
  out.index_one.value = scaled.get_num() / scaled.get_den() - m;
  return out;
}

BoundEntry bound_k_ab(const FiniteSubset& a, FoldOptions opts) {
  require_simplicial(a);
  return k_ab_from(a.dim(), reduction_number(a, 64, opts));
}

BoundEntry bound_hoa_stuckrad_cm(const FiniteSubset& a, const BoundsFlags& flags) {
  require_simplicial(a);
  require_positive_dim(a);
  const std::size_t n = a.dim();
  const mpz_class deg = degree_via_volume(a);
  const mpz_class size(static_cast<unsigned long>(a.size()));
  const mpz_class nn(static_cast<unsigned long>(n));
  const mpz_class d(static_cast<long>(a.degree()));

  std::vector<std::string> held;
  if (n == 1) held.push_back("(i) n = 1");
  if (flags.cohen_macaulay) held.push_back("(ii) Cohen-Macaulay (asserted)");
  if (deg <= size - nn) held.push_back("(iii) deg <= |A| - n");
  if ((size - nn - 1) * d <= deg) held.push_back("(iv) |A| - n - 1 <= deg/d_A");
  if (deg == power(d, n) && d <= nn) held.push_back("(v) deg = d_A^n and d_A <= n");

  BoundEntry e{"hoa-stuckrad-cm", {}, !held.empty(), ""};
  if (held.empty()) {
    e.hypothesis = "none of the conditions (i)-(v) holds";
    return e;
  }
  for (std::size_t k = 0; k < held.size(); ++k) e.hypothesis += (k ? ", " : "") + held[k];
  mpz_class v = deg - size + nn + 2;
  if (flags.smooth) {
    v = std::min(v, mpz_class(nn * (d - 2) + 1));
    e.hypothesis += "; smooth (asserted)";
  }
  e.value = v;
  return e;
}

BoundEntry bound_hoa_stuckrad_general(const FiniteSubset& a) {
  require_simplicial(a);
  require_positive_dim(a);
  const std::size_t n = a.dim();
  const mpz_class deg = degree_via_volume(a);
  const mpz_class size(static_cast<unsigned long>(a.size()));
  const mpz_class nn(static_cast<unsigned long>(n));
  const mpz_class d(static_cast<long>(a.degree()));
  BoundEntry e{"hoa-stuckrad-general", {}, true, "simplicial"};
  mpz_class v = (d - 1) * (size - nn - 1) + 1;
  if (deg >= size - nn + 1) {
    v = std::min(v, mpz_class((nn + 1) * (deg - size + nn - 1) + 3));
    e.hypothesis += "; deg >= |A| - n + 1";
  }
  e.value = v;
  return e;
}

BoundEntry bound_reduction_number(const FiniteSubset& a, FoldOptions opts) {
  require_simplicial(a);
  return reduction_from(a.dim(), a.degree(), reduction_number(a, 64, opts));
}

ReductionFaceBounds bound_r_from_faces(const FiniteSubset& a) {
  require_simplicial(a);
  const std::size_t n = a.dim();
  if (n + 1 >= 8 * sizeof(unsigned long))
    throw Error(ErrorKind::InvalidInput, "too many faces to enumerate");
  const mpz_class d(static_cast<long>(a.degree()));
  ReductionFaceBounds out;
  for (unsigned long mask = 1; mask < (1UL << (n + 1)); ++mask) {
    std::vector<std::size_t> face;
    for (std::size_t k = 0; k <= n; ++k)
      if (mask >> k & 1) face.push_back(k);
    const FaceReport rep = face_lattice_point_report(a, face);
    const std::size_t i = face.size() - 1;
    if (rep.full()) {
      const mpz_class v = power(d, n - i) + static_cast<unsigned long>(i) - 1;
      if (!out.full_face || v < out.full_face->value) out.full_face = FaceBound{v, face};
    }
    const mpz_class q = rep.in_a - static_cast<unsigned long>(i) - 1;
    const mpz_class v = (power(d, i) - q) * power(d, n - i);
    if (!out.point_count || v < out.point_count->value) out.point_count = FaceBound{v, face};
  }
  return out;
}

BoundEntry bound_gt(const CongruenceSystem& sys) {
  sys.validate();
  return {"gt", mpz_class(sys.n + 1), true, "GT-subset of a congruence system"};
}

BoundsReport collect_bounds(const FiniteSubset& a, const BoundsFlags& flags,
                            const CongruenceSystem* sys, FoldOptions opts) {
  BoundsReport rep;
  const EffectiveBounds eff = bound_effective_khovanskii(a);
  rep.entries.push_back(eff.general);
  rep.entries.push_back(eff.index_one);

  std::optional<int> r;
  std::string r_error;
  if (a.is_simplicial()) {
    r = reduction_number(a, 64, opts);
    rep.reduction_number = r;
  } else {
    r_error = "not simplicial: A must contain 0 and every d_A*e_i";
  }
  rep.entries.push_back(r ? k_ab_from(a.dim(), *r) : BoundEntry{"k-ab", {}, false, r_error});
  rep.entries.push_back(
      guarded("hoa-stuckrad-cm", [&] { return bound_hoa_stuckrad_cm(a, flags); }));
  rep.entries.push_back(
      guarded("hoa-stuckrad-general", [&] { return bound_hoa_stuckrad_general(a); }));
  rep.entries.push_back(r ? reduction_from(a.dim(), a.degree(), *r)
                          : BoundEntry{"reduction-number", {}, false, r_error});
  if (sys) rep.entries.push_back(bound_gt(*sys));
  if (r) rep.face_bounds = bound_r_from_faces(a);

  for (const auto& e : rep.entries)
    if (e.applicable && e.value && (!rep.best_applicable || *e.value < *rep.best_applicable))
      rep.best_applicable = e.value;
  return rep;
}

void check_soundness(BoundsReport& rep, const GrowthAnalysis& analysis) {
  rep.observed_n0 = analysis.n0;
  rep.observation_certified = analysis.certification != Certification::WindowHeuristic;
  rep.violations.clear();
  for (const auto& e : rep.entries) {
    if (!e.applicable || !e.value) continue;
    if (*e.value < analysis.n0)
      rep.violations.push_back(e.name + " = " + e.value->get_str() + " < observed n0 = " +
                               std::to_string(analysis.n0));
  }
  if (rep.reduction_number) {
    for (const auto* fb : {&rep.face_bounds.full_face, &rep.face_bounds.point_count})
      if (*fb && (*fb)->value < *rep.reduction_number)
        rep.violations.push_back("face bound " + (*fb)->value.get_str() + " < r(A) = " +
                                 std::to_string(*rep.reduction_number));
  }
  rep.sound = rep.violations.empty();
}

BoundsReport compare_report(const FiniteSubset& a, const GrowthAnalysis& analysis,
                            const BoundsFlags& flags, const CongruenceSystem* sys,
                            FoldOptions opts) {
  BoundsReport rep = collect_bounds(a, flags, sys, opts);
  check_soundness(rep, analysis);
  return rep;
}

}  // namespace khlab
