#include "khlab/gt.hpp"

#include <algorithm>
#include <numeric>

#include "khlab/error.hpp"

namespace khlab {

namespace {

constexpr long kMaxModulusProduct = 1'000'000;

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

void shape_mismatch(const std::string& why) {
  throw Error(ErrorKind::ShapeMismatch, "shape mismatch: " + why);
}

// Residue tuples in Z_{d_1} x ... x Z_{d_s}, mixed radix with d_1 varying fastest.
class ResidueSpace {
 public:
  explicit ResidueSpace(const std::vector<long>& moduli) : moduli_(moduli) {
    size_ = 1;
    for (long m : moduli_) size_ *= static_cast<std::size_t>(m);
    add_.resize(size_ * size_);
    for (std::size_t x = 0; x < size_; ++x)
      for (std::size_t y = 0; y < size_; ++y) {
        std::size_t xs = x, ys = y, idx = 0, stride = 1;
        for (long m : moduli_) {
          const auto um = static_cast<std::size_t>(m);
          idx += ((xs % um + ys % um) % um) * stride;
          xs /= um;
          ys /= um;
          stride *= um;
        }
        add_[x * size_ + y] = idx;
      }
  }

  std::size_t size() const { return size_; }
  std::size_t add(std::size_t x, std::size_t y) const { return add_[x * size_ + y]; }

  // Residue tuple of v * column j of the system.
  std::size_t scaled_column(const CongruenceSystem& sys, std::size_t j, long v) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      const long m = moduli_[i];
      const long r = static_cast<long>((static_cast<__int128>(v) * sys.rows[i][j]) % m);
      idx += static_cast<std::size_t>(r) * stride;
      stride *= static_cast<std::size_t>(m);
    }
    return idx;
  }

 private:
  std::vector<long> moduli_;
  std::size_t size_ = 1;
  std::vector<std::size_t> add_;
};

}  // namespace

long CongruenceSystem::d() const {
  long p = 1;
  for (long m : moduli) p *= m;
  return p;
}

void CongruenceSystem::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "system needs n >= 1");
  if (moduli.empty()) throw Error(ErrorKind::InvalidInput, "system needs at least one modulus");
  if (rows.size() != moduli.size())
    throw Error(ErrorKind::InvalidInput,
                "system has " + std::to_string(rows.size()) + " rows for " +
                    std::to_string(moduli.size()) + " moduli");
  long prod = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const long m = moduli[i];
    if (m < 1) throw Error(ErrorKind::InvalidInput, "modulus " + std::to_string(i) + " must be >= 1");
    if (__builtin_mul_overflow(prod, m, &prod) || prod > kMaxModulusProduct)
      throw Error(ErrorKind::InvalidInput, "product of moduli is too large");
    if (rows[i].size() != static_cast<std::size_t>(n) + 1)
      throw Error(ErrorKind::InvalidInput,
                  "row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()) +
                      ", expected n+1 = " + std::to_string(n + 1));
    long g = m;
    for (long a : rows[i]) {
      if (a < 0 || a >= m)
        throw Error(ErrorKind::InvalidInput,
                    "row " + std::to_string(i) + " entry " + std::to_string(a) +
                        " is outside [0, " + std::to_string(m) + ")");
      g = std::gcd(g, a);
    }
    if (g != 1)
      throw Error(ErrorKind::InvalidInput,
                  "row " + std::to_string(i) + " and its modulus have common divisor " +
                      std::to_string(g));
  }
}

std::vector<LatticePoint> solve_level_enumerate(const CongruenceSystem& sys, int t,
                                                std::size_t max_points) {
  sys.validate();
  if (t < 0) throw Error(ErrorKind::InvalidInput, "level must be >= 0");
  const long total = static_cast<long>(t) * sys.d();
  const std::size_t vars = static_cast<std::size_t>(sys.n) + 1;
  const std::size_t s = sys.moduli.size();
  std::vector<LatticePoint> out;
  LatticePoint y(vars, 0);
  std::vector<long> res(s, 0);

  auto rec = [&](auto&& self, std::size_t j, long left) -> void {
    if (j + 1 == vars) {
      y[j] = left;
      for (std::size_t i = 0; i < s; ++i)
        if ((res[i] + static_cast<long>((static_cast<__int128>(left) * sys.rows[i][j]) %
                                        sys.moduli[i])) % sys.moduli[i] != 0)
          return;
      if (out.size() == max_points)
        throw ResourceCapError("level " + std::to_string(t) + " has more than " +
                                   std::to_string(max_points) + " solutions",
                               t - 1);
      out.push_back(y);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      y[j] = v;
      std::vector<long> saved = res;
      for (std::size_t i = 0; i < s; ++i)
        res[i] = (res[i] + static_cast<long>((static_cast<__int128>(v) * sys.rows[i][j]) %
                                             sys.moduli[i])) % sys.moduli[i];
      self(self, j + 1, left - v);
      res = std::move(saved);
    }
  };
  rec(rec, 0, total);
  return out;
}

mpz_class solve_level_count(const CongruenceSystem& sys, int t) {
  sys.validate();
  if (t < 0) throw Error(ErrorKind::InvalidInput, "level must be >= 0");
  const ResidueSpace space(sys.moduli);
  const std::size_t R = space.size();
  const auto N = static_cast<std::size_t>(t) * static_cast<std::size_t>(sys.d());
  const std::size_t vars = static_cast<std::size_t>(sys.n) + 1;

  // dp[sum * R + residue]
  std::vector<mpz_class> dp((N + 1) * R, 0), next;
  dp[0] = 1;
  for (std::size_t j = 0; j + 1 < vars; ++j) {
    next.assign((N + 1) * R, 0);
    for (std::size_t v = 0; v <= N; ++v) {
      const std::size_t shift = space.scaled_column(sys, j, static_cast<long>(v));
      for (std::size_t sum = 0; sum + v <= N; ++sum)
        for (std::size_t r = 0; r < R; ++r) {
          const mpz_class& c = dp[sum * R + r];
          if (c != 0) next[(sum + v) * R + space.add(r, shift)] += c;
        }
    }
    dp.swap(next);
  }
  mpz_class count = 0;
  for (std::size_t sum = 0; sum <= N; ++sum) {
    const std::size_t shift = space.scaled_column(sys, vars - 1, static_cast<long>(N - sum));
    for (std::size_t r = 0; r < R; ++r)
      if (dp[sum * R + r] != 0 && space.add(r, shift) == 0) count += dp[sum * R + r];
  }
  return count;
}

GtSubset gt_subset(const CongruenceSystem& sys) {
  std::vector<LatticePoint> bar = solve_level_enumerate(sys, 1);
  FiniteSubset a = dehomogenize(bar);
  return {sys, std::move(bar), std::move(a)};
}

namespace {

struct SurfaceData {
  long d, g, dp, lambda;
};

SurfaceData surface_shape(const CongruenceSystem& sys) {
  sys.validate();
  if (sys.n != 2) shape_mismatch("the surface formula needs n = 2");
  if (sys.moduli.size() != 1) shape_mismatch("the surface formula needs a single congruence");
  const auto& row = sys.rows[0];
  const long d = sys.d();
  if (row[0] != 0) shape_mismatch("the coefficient of y_0 must be 0");
  if (row[1] <= 0) shape_mismatch("the coefficient of y_1 must be positive");
  if (d <= 2) shape_mismatch("the surface formula needs d > n = 2");
  const long g = std::gcd(row[1], d);
  const long a1 = row[1] / g, dp = d / g;
  mpz_class inv;
  mpz_class a1z(a1), dpz(dp);
  if (mpz_invert(inv.get_mpz_t(), a1z.get_mpz_t(), dpz.get_mpz_t()) == 0) inv = 0;
  long lambda = mpz_class((inv * row[2]) % dp).get_si();
  if (lambda < 0) lambda += dp;
  if (lambda == 0) lambda = dp;
  return {d, g, dp, lambda};
}

}  // namespace

long gt_surface_theta(const CongruenceSystem& sys) {
  const SurfaceData s = surface_shape(sys);
  return s.g + std::gcd(s.lambda, s.dp) + std::gcd(std::labs(s.lambda - s.g), s.dp);
}

RationalPolynomial gt_surface_polynomial(const CongruenceSystem& sys) {
  const long d = sys.d();
  const long theta = gt_surface_theta(sys);
  return RationalPolynomial({mpq_class(1), mpq_class(theta, 2), mpq_class(d, 2)});
}

RationalPolynomial gt_prime_polynomial(const CongruenceSystem& sys) {
  sys.validate();
  const long d = sys.d();
  if (sys.moduli.size() != 1) shape_mismatch("the prime formula needs a single congruence");
  if (!is_prime(d)) shape_mismatch("d = " + std::to_string(d) + " is not prime");
  if (sys.n < 2 || sys.n >= d) shape_mismatch("the prime formula needs 2 <= n < d");
  const auto& row = sys.rows[0];
  if (row[0] != 0) shape_mismatch("the coefficient of y_0 must be 0");
  for (int j = 1; j <= sys.n; ++j)
    if (row[j] <= row[j - 1]) shape_mismatch("exponents must satisfy 0 < a_1 < ... < a_n");
  return RationalPolynomial::binomial(d, sys.n, static_cast<unsigned long>(sys.n)) *
             mpq_class(1, d) +
         RationalPolynomial::constant(mpq_class(d - 1, d));
}

RlSets rl_sets(const GtSubset& g) {
  const int n = g.system.n;
  const long d = g.system.d();
  std::vector<LatticePoint> rl;
  for (const auto& y : g.a_bar)
    if (std::all_of(y.begin(), y.end(), [](Coord c) { return c > 0; }))
      rl.emplace_back(y.begin() + 1, y.end());
  std::sort(rl.begin(), rl.end());

  std::vector<LatticePoint> rest;
  LatticePoint a(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int j, long left) -> void {
    if (j == n) {
      if (!std::binary_search(rl.begin(), rl.end(), a)) rest.push_back(a);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      a[j] = v;
      self(self, j + 1, left - v);
    }
    a[j] = 0;
  };
  rec(rec, 0, d);
  return {std::move(rl), FiniteSubset::normalize(rest)};
}

RlReport rl_checks(const FiniteSubset& complement, int n, long d, std::size_t rl_size,
                   FoldOptions opts) {
  RlReport r;
  r.n = n;
  r.d = d;
  r.rl_size = rl_size;
  r.applicable = n >= 2;
  mpz_ui_pow_ui(r.expected_degree.get_mpz_t(), static_cast<unsigned long>(d),
                static_cast<unsigned long>(n));
  r.degree_volume = degree_via_volume(complement);
  r.degree_snf = degree_via_snf(complement);
  r.degree_ok = r.degree_volume == r.expected_degree && r.degree_snf == r.expected_degree;

  r.phi_from = n + 1;
  r.phi_to = n + 4;
  const std::vector<std::uint64_t> phi = phi_values(complement, r.phi_to, opts);
  r.phi_ok = true;
  for (int t = r.phi_from; t <= r.phi_to; ++t)
    r.phi_ok = r.phi_ok && mpz_class(static_cast<unsigned long>(phi[t])) ==
                               binomial(mpz_class(static_cast<long>(t) * d + n),
                                        static_cast<unsigned long>(n));

  mpz_class a = n * (d - 2) + 1;
  mpz_class b = r.expected_degree -
                binomial(mpz_class(n + d), static_cast<unsigned long>(n)) +
                static_cast<unsigned long>(rl_size) + n + 2;
  r.regularity_bound = std::min(a, b);

  FoldPhiSource src(complement, opts);
  const GrowthAnalysis g = fit_khovanskii(src, n, CertifyPolicy::windowed(4));
  r.observed_n0 = g.n0;
  const RationalPolynomial expected =
      RationalPolynomial::binomial(d, n, static_cast<unsigned long>(n));
  r.phi_ok = r.phi_ok && g.polynomial == expected;
  r.n0_ok = g.n0 <= n + 1 && mpz_class(g.n0) <= r.regularity_bound + 1;
  return r;
}

}  // namespace khlab
