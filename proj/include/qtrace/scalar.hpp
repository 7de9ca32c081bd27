#pragma once

#include <complex>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace qtrace {

// Laurent polynomial in t = q^(1/8) with arbitrary-precision integer coefficients.
// Exponents are stored in eighths of q.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c);  // NOLINT: implicit constant embedding is intended

  static Scalar monomial(int eighths, const mpz_class& coef = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  const std::map<int, mpz_class>& terms() const { return terms_; }

  // Exponent (in eighths) when the scalar is exactly q^(n/8).
  std::optional<int> unit_power() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar shifted(int eighths) const;
  Scalar reflect() const;

  // Value at q^(1/8) = exp(2 pi i / L).
  std::complex<double> eval(int L) const;

  std::string str() const;

 private:
  std::map<int, mpz_class> terms_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// exp(2 pi i n / L) with n reduced mod L first, so large exponents stay exact.
std::complex<double> root_power(long n, int L);

}  // namespace qtrace
