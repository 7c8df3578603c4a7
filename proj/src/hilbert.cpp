#include "khlab/hilbert.hpp"

#include <algorithm>

#include "khlab/error.hpp"
#include "khlab/geometry.hpp"
#include "khlab/lattice.hpp"

namespace khlab {

namespace {

mpz_class factorial(unsigned long m) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), m);
  return f;
}

mpz_class choose(const mpz_class& n, unsigned long k) {
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

// Largest m >= k with C(m, k) <= n, for n >= 1.
mpz_class largest_top(const mpz_class& n, unsigned long k) {
  mpz_class lo = k, hi = k + 1;
  while (choose(hi, k) <= n) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const mpz_class mid = (lo + hi) / 2;
    if (choose(mid, k) <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

MacaulayExpansion macaulay_expand(const mpz_class& n, unsigned long d) {
  if (n < 1 || d < 1)
    throw Error(ErrorKind::InvalidInput, "Macaulay expansion needs n >= 1 and d >= 1");
  MacaulayExpansion e;
  e.d = d;
  mpz_class rem = n;
  for (unsigned long j = d; j >= 1 && rem > 0; --j) {
    mpz_class m = largest_top(rem, j);
    rem -= choose(m, j);
    e.terms.emplace_back(std::move(m), j);
  }
  return e;
}

mpz_class macaulay_bound(const mpz_class& n, unsigned long d) {
  if (n == 0) return 0;
  mpz_class b = 0;
  for (const auto& [m, j] : macaulay_expand(n, d).terms) b += choose(m + 1, j + 1);
  return b;
}

GrowthCheck check_macaulay_growth(const std::vector<mpz_class>& phi) {
  GrowthCheck g;
  for (std::size_t t = 1; t + 1 < phi.size(); ++t) {
    if (phi[t + 1] > macaulay_bound(phi[t], t)) {
      g.ok = false;
      g.first_violation = t + 1;
      break;
    }
  }
  return g;
}

std::vector<unsigned long> GotzmannDevelopment::exponents(std::size_t limit) const {
  if (s > limit)
    throw Error(ErrorKind::InvalidInput,
                "Gotzmann number " + s.get_str() + " is too large to list");
  std::vector<unsigned long> out;
  for (const auto& [a, k] : runs)
    out.insert(out.end(), k.get_ui(), a);
  return out;
}

GotzmannDevelopment gotzmann_development(const RationalPolynomial& p) {
  if (p.is_zero() || p.leading() < 0)
    throw Error(ErrorKind::NotHilbertPolynomial,
                "not a Hilbert polynomial: leading coefficient must be positive");
  GotzmannDevelopment g;
  RationalPolynomial q = p;
  while (!q.is_zero()) {
    const unsigned long a = static_cast<unsigned long>(q.degree());
    const mpq_class k = q.leading() * factorial(a);
    if (k <= 0 || k.get_den() != 1)
      throw Error(ErrorKind::NotHilbertPolynomial,
                  "not a Hilbert polynomial: " + p.pretty() + " has no Gotzmann development");
    const mpz_class kk = k.get_num();
    // A run of kk terms of exponent a telescopes to C(t+a+1, a+1) - C(t+a+1-kk, a+1).
    const RationalPolynomial run = RationalPolynomial::binomial(a + 1, a + 1) -
                                   RationalPolynomial::binomial(mpz_class(a + 1) - kk, a + 1);
    q = (q - run).shifted(kk);
    g.runs.emplace_back(a, kk);
    g.s += kk;
  }
  return g;
}

mpz_class VectorPhiSource::value(int t) {
  if (t < 0 || static_cast<std::size_t>(t) >= values_.size())
    throw ResourceCapError("phi(" + std::to_string(t) + ") is beyond the supplied values",
                           static_cast<int>(values_.size()) - 1);
  return values_[t];
}

mpz_class FoldPhiSource::value(int t) {
  while (values_.size() <= static_cast<std::size_t>(t)) {
    builder_.advance();
    values_.emplace_back(static_cast<unsigned long>(builder_.cardinality()));
  }
  return values_[t];
}

std::string to_string(Certification c) {
  switch (c) {
    case Certification::GotzmannExact: return "gotzmann-exact";
    case Certification::BoundCertified: return "bound-certified";
    case Certification::WindowHeuristic: return "window-heuristic";
  }
  return "unknown";
}

GrowthAnalysis fit_khovanskii(PhiSource& phi, int r, const CertifyPolicy& policy,
                              const FitOptions& opts) {
  if (r < 0) throw Error(ErrorKind::InvalidInput, "expected degree must be >= 0");
  std::vector<mpz_class> cache;
  auto val = [&](int t) -> const mpz_class& {
    while (cache.size() <= static_cast<std::size_t>(t))
      cache.push_back(phi.value(static_cast<int>(cache.size())));
    return cache[t];
  };
  const int w = std::max(0, opts.stable_window);

  int T = r + w;
  for (;;) {
    if (T > opts.t_max)
      throw Error(ErrorKind::UnstableFit,
                  "unstable fit: no degree-" + std::to_string(r) +
                      " polynomial matches phi up to t = " + std::to_string(opts.t_max));
    std::vector<mpz_class> tail;
    for (int t = T - r; t <= T; ++t) tail.push_back(val(t));
    const RationalPolynomial p = RationalPolynomial::interpolate(T - r, tail);
    auto agrees = [&](int t) { return p(t) == mpq_class(val(t)); };

    bool stable = p.degree() == r && p.leading() > 0;
    for (int t = std::max(0, T - r - w); stable && t < T - r; ++t) stable = agrees(t);
    std::optional<GotzmannDevelopment> gd;
    if (stable) {
      try {
        gd = gotzmann_development(p);
      } catch (const Error&) {
        stable = false;
      }
    }
    if (!stable) {
      ++T;
      continue;
    }

    Certification kind = policy.kind;
    std::string note;
    long target = T;
    if (kind == Certification::GotzmannExact) {
      if (gd->s > opts.gotzmann_ceiling) {
        note = "Gotzmann number s = " + gd->s.get_str() + " exceeds the verification ceiling " +
               std::to_string(opts.gotzmann_ceiling);
      } else if (p(gd->s.get_si() + 1) > mpq_class(static_cast<unsigned long>(opts.max_points))) {
        note = "phi(s+1) for s = " + gd->s.get_str() + " exceeds the point ceiling";
      } else {
        target = std::max<long>(T, gd->s.get_si() + 1);
      }
      if (!note.empty()) kind = policy.bound ? Certification::BoundCertified
                                             : Certification::WindowHeuristic;
    }
    if (kind == Certification::BoundCertified) {
      if (!policy.bound) {
        note += std::string(note.empty() ? "" : "; ") + "no applicable bound on n0";
        kind = Certification::WindowHeuristic;
      } else if (*policy.bound + r > opts.gotzmann_ceiling) {
        note += std::string(note.empty() ? "" : "; ") + "bound " +
                std::to_string(*policy.bound) + " is beyond the verification ceiling";
        kind = Certification::WindowHeuristic;
      } else {
        target = std::max<long>(T, *policy.bound + r);
      }
    }
    if (kind == Certification::WindowHeuristic) target = T + policy.window;
    if (kind != policy.kind) note += "; fell back to " + to_string(kind);

    int bad = -1;
    for (int t = T + 1; t <= target && bad < 0; ++t)
      if (!agrees(t)) bad = t;
    if (bad >= 0) {
      T = bad;
      continue;
    }

    GrowthAnalysis g;
    int n0 = static_cast<int>(target);
    while (n0 > 0 && agrees(n0 - 1)) --n0;
    g.phi_values.assign(cache.begin(), cache.begin() + target + 1);
    g.polynomial = p;
    g.n0 = n0;
    g.certification = kind;
    if (kind == Certification::WindowHeuristic) g.window = policy.window;
    if (kind == Certification::BoundCertified) g.bound = policy.bound;
    g.gotzmann = std::move(gd);
    g.note = std::move(note);
    const mpq_class deg = p.leading() * factorial(static_cast<unsigned long>(r));
    if (deg.get_den() != 1)
      throw Error(ErrorKind::Internal, "leading coefficient times r! is not an integer");
    g.degree = deg.get_num();
    return g;
  }
}

mpz_class degree_via_volume(const FiniteSubset& a) {
  if (a.dim() == 0) return 1;
  const DifferenceLattice dl = difference_lattice(a);
  if (!dl.index)
    throw Error(ErrorKind::RankDeficient,
                "rank-deficient: Z(A-A) has rank " + std::to_string(dl.rank) + " < " +
                    std::to_string(a.dim()));
  const mpq_class q = factorial(a.dim()) * hull_volume(a.points()) / *dl.index;
  if (q.get_den() != 1)
    throw Error(ErrorKind::Internal, "volume formula gave a non-integral degree " + q.get_str());
  return q.get_num();
}

mpz_class degree_via_snf(const FiniteSubset& a) {
  if (a.size() == 1) return 1;
  const FullRankReduction red = reduce_to_full_rank(a);
  const FiniteSubset& b = red.subset;
  const HomogenizedSubset hom = homogenize(b);
  const IntMatrix m = IntMatrix::from_columns(hom.points, b.dim() + 1);
  const SnfResult snf = smith_normal_form(m);
  if (snf.rank != b.dim() + 1)
    throw Error(ErrorKind::Internal, "homogenized matrix of a full-rank set lost rank");
  mpz_class delta = 1;
  for (std::size_t k = 0; k < snf.rank; ++k) delta *= snf.diagonal[k];
  std::vector<LatticePoint> pts = hom.points;
  pts.emplace_back(b.dim() + 1, 0);
  const mpq_class q = factorial(snf.rank) * hull_volume(pts) / delta;
  if (q.get_den() != 1)
    throw Error(ErrorKind::Internal, "lattice-ideal formula gave a non-integral degree " + q.get_str());
  return q.get_num();
}

std::optional<ClosedForm> closed_form_small(const FiniteSubset& a) {
  const std::size_t n = a.dim();
  if (!difference_lattice(a).index) return std::nullopt;
  ClosedForm cf;
  if (a.size() == n + 1) {
    cf.polynomial = RationalPolynomial::binomial(static_cast<unsigned long>(n), n);
    cf.n0 = 0;
    cf.degree = 1;
    return cf;
  }
  if (a.size() == n + 2) {
    const mpz_class d = degree_via_volume(a);
    cf.polynomial = RationalPolynomial::binomial(static_cast<unsigned long>(n + 1), n + 1) -
                    RationalPolynomial::binomial(mpz_class(n + 1) - d, n + 1);
    const mpz_class n0 = d - static_cast<unsigned long>(n) - 1;
    cf.n0 = n0 > 0 ? static_cast<int>(n0.get_si()) : 0;
    cf.degree = d;
    return cf;
  }
  return std::nullopt;
}

}  // namespace khlab
