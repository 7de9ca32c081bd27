#include "qtrace/scalar.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qtrace {

Scalar::Scalar(long c) {
  if (c != 0) terms_[0] = c;
}

Scalar Scalar::monomial(int eighths, const mpz_class& coef) {
  Scalar s;
  if (coef != 0) s.terms_[eighths] = coef;
  return s;
}

bool Scalar::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

std::optional<int> Scalar::unit_power() const {
  if (terms_.size() == 1 && terms_.begin()->second == 1) return terms_.begin()->first;
  return std::nullopt;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [n, c] : o.terms_) {
    auto it = terms_.find(n);
    if (it == terms_.end()) {
      terms_.emplace(n, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r = *this;
  r += o;
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& [n, c] : r.terms_) c = -c;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  for (const auto& [n1, c1] : terms_) {
    for (const auto& [n2, c2] : o.terms_) {
      auto& slot = r.terms_[n1 + n2];
      slot += c1 * c2;
    }
  }
  std::erase_if(r.terms_, [](const auto& kv) { return kv.second == 0; });
  return r;
}

Scalar Scalar::shifted(int eighths) const {
  Scalar r;
  for (const auto& [n, c] : terms_) r.terms_.emplace(n + eighths, c);
  return r;
}

Scalar Scalar::reflect() const {
  Scalar r;
  for (const auto& [n, c] : terms_) r.terms_.emplace(-n, c);
  return r;
}

std::complex<double> root_power(long n, int L) {
  long m = n % L;
  if (m < 0) m += L;
  double ang = 2.0 * std::numbers::pi * static_cast<double>(m) / L;
  return {std::cos(ang), std::sin(ang)};
}

std::complex<double> Scalar::eval(int L) const {
  std::complex<double> acc = 0;
  for (const auto& [n, c] : terms_) acc += c.get_d() * root_power(n, L);
  return acc;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*q^(" << n << "/8)";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace qtrace
