#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qtrace/matrix.hpp"
#include "qtrace/scalar.hpp"

namespace qtrace {

// Quantum torus T(A, u): generators indexed by labels, u = q^(u8/8) with u8 even.
struct TorusSpec {
  std::vector<std::string> labels;
  IntMatrix A;
  int u8 = 0;

  std::size_t size() const { return labels.size(); }
  int index(const std::string& label) const;  // -1 if absent
  Exp unit(const std::string& label, long mult = 1) const;
};

using SpecPtr = std::shared_ptr<const TorusSpec>;

SpecPtr make_spec(std::vector<std::string> labels, IntMatrix A, int u8);

long pairing(const Exp& k, const Exp& n, const IntMatrix& A);

// Phase in eighths of x^k x^n = q^(phase/8) x^(k+n).
long product_phase(const TorusSpec& spec, const Exp& k, const Exp& n);

// x^(sum pieces) = q^(pre/8) x^(p1) x^(p2) ...; returns pre.
long word_prefactor(const TorusSpec& spec, const std::vector<Exp>& pieces);

class TorusElement {
 public:
  using Terms = std::map<Exp, Scalar>;

  explicit TorusElement(SpecPtr spec) : spec_(std::move(spec)) {}
  static TorusElement monomial(SpecPtr spec, Exp k, const Scalar& coef = 1);
  static TorusElement one(SpecPtr spec);

  const SpecPtr& spec() const { return spec_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exp& k, const Scalar& c);

  TorusElement operator+(const TorusElement& o) const;
  TorusElement operator-(const TorusElement& o) const;
  TorusElement operator*(const TorusElement& o) const;
  TorusElement scaled(const Scalar& c) const;
  TorusElement pow(int n) const;  // monomials only for negative n
  bool operator==(const TorusElement& o) const;
  bool operator!=(const TorusElement& o) const { return !(*this == o); }

  TorusElement reflect() const;
  bool is_reflection_invariant() const { return reflect() == *this; }
  bool has_unit_coefficients() const;

  // Canonical text: `coef * x[a]^e1 x[b]^e2`, terms in lexicographic exponent order.
  std::string str() const;

 private:
  void check_same(const TorusElement& o) const;
  SpecPtr spec_;
  Terms terms_;
};

TorusElement weyl_normalize(const SpecPtr& spec, const std::vector<Exp>& factors);

// H B H^T == r A
bool mlh_check(const IntMatrix& H, const IntMatrix& B, const IntMatrix& A, long r);

// Linear extension of x^k -> y^(kH) from src = T(A, u^r) to dst = T(B, u).
TorusElement mlh_apply(const IntMatrix& H, const SpecPtr& dst, const TorusElement& a, long r);

TorusElement canonical_projection(const TorusElement& a, const std::function<bool(const Exp&)>& keep);

}  // namespace qtrace
