#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace khlab {

/// Generalized binomial coefficient C(n, k) for any integer n and k >= 0.
mpz_class binomial(const mpz_class& n, unsigned long k);

/// Univariate polynomial in t with exact rational coefficients, stored in
/// ascending degree with no trailing zeros.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coefficients);

  static RationalPolynomial constant(const mpq_class& c);
  /// C(a t + c, k) as a polynomial in t.
  static RationalPolynomial binomial(const mpz_class& a, const mpz_class& c,
                                     unsigned long k);
  /// C(t + c, k).
  static RationalPolynomial binomial(const mpz_class& c, unsigned long k) {
    return binomial(1, c, k);
  }
  /// The polynomial of degree < values.size() through (t0 + i, values[i]),
  /// built from forward differences in the Newton basis.
  static RationalPolynomial interpolate(long t0, const std::vector<mpz_class>& values);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }
  mpq_class coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
  mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

  mpq_class operator()(const mpq_class& t) const;
  mpq_class operator()(long t) const { return (*this)(mpq_class(t)); }

  RationalPolynomial operator+(const RationalPolynomial& o) const;
  RationalPolynomial operator-(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const mpq_class& s) const;
  bool operator==(const RationalPolynomial& o) const { return c_ == o.c_; }

  /// q(t) = p(t + k).
  RationalPolynomial shifted(const mpz_class& k) const;

  /// Integer values at t = 0..degree+1, which forces integrality on Z.
  bool is_integer_valued() const;

  /// e.g. "4t^2 - 16t + 36" or "(5t^2 + 3t + 2)/2".
  std::string pretty() const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

}  // namespace khlab
