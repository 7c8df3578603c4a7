#include "khlab/polynomial.hpp"

#include <sstream>

namespace khlab {

mpz_class binomial(const mpz_class& n, unsigned long k) {
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coefficients)
    : c_(std::move(coefficients)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void RationalPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RationalPolynomial RationalPolynomial::constant(const mpq_class& c) {
  return RationalPolynomial({c});
}

RationalPolynomial RationalPolynomial::binomial(const mpz_class& a, const mpz_class& c,
                                                unsigned long k) {
  RationalPolynomial p = constant(1);
  for (unsigned long j = 0; j < k; ++j)
    p = p * RationalPolynomial({mpq_class(c - j), mpq_class(a)});
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return p * mpq_class(1, f);
}

RationalPolynomial RationalPolynomial::interpolate(long t0,
                                                   const std::vector<mpz_class>& values) {
  std::vector<mpz_class> diff = values;
  RationalPolynomial p;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (diff[0] != 0) p = p + binomial(1, -t0, j) * mpq_class(diff[0]);
    for (std::size_t i = 0; i + 1 < diff.size() - j; ++i) diff[i] = diff[i + 1] - diff[i];
  }
  return p;
}

mpq_class RationalPolynomial::operator()(const mpq_class& t) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  acc.canonicalize();
  return acc;
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coefficient(i) + o.coefficient(i);
  return RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
  return *this + o * mpq_class(-1);
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::operator*(const mpq_class& s) const {
  std::vector<mpq_class> r = c_;
  for (auto& c : r) c *= s;
  return RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::shifted(const mpz_class& k) const {
  const RationalPolynomial lin({mpq_class(k), mpq_class(1)});
  RationalPolynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
  return acc;
}

bool RationalPolynomial::is_integer_valued() const {
  for (long t = 0; t <= degree() + 1; ++t)
    if ((*this)(t).get_den() != 1) return false;
  return true;
}

std::string RationalPolynomial::pretty() const {
  if (c_.empty()) return "0";
  mpz_class den = 1;
  for (const auto& c : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const mpz_class v = c_[i].get_num() * (den / c_[i].get_den());
    if (v == 0) continue;
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    first = false;
    const mpz_class a = abs(v);
    if (i == 0 || a != 1) os << a.get_str();
    if (i >= 1) os << 't';
    if (i >= 2) os << '^' << i;
  }
  if (den == 1) return os.str();
  return "(" + os.str() + ")/" + den.get_str();
}

}  // namespace khlab
