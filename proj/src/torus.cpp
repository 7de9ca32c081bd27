#include "qtrace/torus.hpp"

#include <sstream>
#include <stdexcept>

namespace qtrace {

int TorusSpec::index(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

Exp TorusSpec::unit(const std::string& label, long mult) const {
  int i = index(label);
  if (i < 0) throw std::invalid_argument("unknown generator " + label);
  Exp k(size(), 0);
  k[i] = mult;
  return k;
}

SpecPtr make_spec(std::vector<std::string> labels, IntMatrix A, int u8) {
  if (A.rows() != labels.size() || !A.is_antisymmetric())
    throw std::invalid_argument("torus matrix must be square antisymmetric over the label set");
  if (u8 % 2 != 0) throw std::invalid_argument("u must be a power of q^(1/4)");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw std::invalid_argument("duplicate label " + labels[i]);
  return std::make_shared<const TorusSpec>(TorusSpec{std::move(labels), std::move(A), u8});
}

long pairing(const Exp& k, const Exp& n, const IntMatrix& A) {
  if (k.size() != A.rows() || n.size() != A.cols()) throw std::invalid_argument("index-set mismatch");
  long s = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    for (std::size_t j = 0; j < n.size(); ++j) s += k[i] * A(i, j) * n[j];
  }
  return s;
}

long product_phase(const TorusSpec& spec, const Exp& k, const Exp& n) {
  return (spec.u8 / 2) * pairing(k, n, spec.A);
}

long word_prefactor(const TorusSpec& spec, const std::vector<Exp>& pieces) {
  long s = 0;
  Exp acc(spec.size(), 0);
  for (const auto& p : pieces) {
    s += pairing(acc, p, spec.A);
    acc = acc + p;
  }
  return -(spec.u8 / 2) * s;
}

TorusElement TorusElement::monomial(SpecPtr spec, Exp k, const Scalar& coef) {
  if (k.size() != spec->size()) throw std::invalid_argument("exponent length mismatch");
  TorusElement e(std::move(spec));
  e.add_term(k, coef);
  return e;
}

TorusElement TorusElement::one(SpecPtr spec) {
  Exp z(spec->size(), 0);
  return monomial(std::move(spec), z);
}

void TorusElement::add_term(const Exp& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TorusElement::check_same(const TorusElement& o) const {
  if (spec_ != o.spec_ && !(spec_->labels == o.spec_->labels && spec_->A == o.spec_->A && spec_->u8 == o.spec_->u8))
    throw std::invalid_argument("torus spec mismatch");
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
  check_same(o);
  TorusElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

TorusElement TorusElement::operator-(const TorusElement& o) const { return *this + o.scaled(-1); }

TorusElement TorusElement::operator*(const TorusElement& o) const {
  check_same(o);
  TorusElement r(spec_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_)
      r.add_term(k1 + k2, (c1 * c2).shifted(static_cast<int>(product_phase(*spec_, k1, k2))));
  return r;
}

TorusElement TorusElement::scaled(const Scalar& c) const {
  TorusElement r(spec_);
  for (const auto& [k, v] : terms_) r.add_term(k, v * c);
  return r;
}

TorusElement TorusElement::pow(int n) const {
  if (n < 0) {
    if (terms_.size() != 1 || !terms_.begin()->second.unit_power())
      throw std::invalid_argument("negative power of a non-monomial");
    const auto& [k, c] = *terms_.begin();
    return monomial(spec_, (-1) * k, c.reflect()).pow(-n);
  }
  TorusElement r = one(spec_);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool TorusElement::operator==(const TorusElement& o) const {
  return spec_->labels == o.spec_->labels && terms_ == o.terms_;
}

TorusElement TorusElement::reflect() const {
  TorusElement r(spec_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.reflect());
  return r;
}

bool TorusElement::has_unit_coefficients() const {
  for (const auto& [k, c] : terms_)
    if (!c.is_one()) return false;
  return true;
}

std::string TorusElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.str() << ") *";
    bool any = false;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      os << " x[" << spec_->labels[i] << "]^" << k[i];
      any = true;
    }
    if (!any) os << " 1";
  }
  return os.str();
}

TorusElement weyl_normalize(const SpecPtr& spec, const std::vector<Exp>& factors) {
  Exp sum(spec->size(), 0);
  for (const auto& f : factors) sum = sum + f;
  return TorusElement::monomial(spec, sum);
}

bool mlh_check(const IntMatrix& H, const IntMatrix& B, const IntMatrix& A, long r) {
  if (H.cols() != B.rows() || B.rows() != B.cols() || A.rows() != H.rows() || A.cols() != H.rows())
    throw std::invalid_argument("dimension mismatch in homomorphism check");
  return H * B * H.transpose() == A * r;
}

TorusElement mlh_apply(const IntMatrix& H, const SpecPtr& dst, const TorusElement& a, long r) {
  const auto& src = *a.spec();
  if (src.u8 != r * dst->u8 || !mlh_check(H, dst->A, src.A, r))
    throw std::invalid_argument("multiplicatively linear map precondition fails");
  TorusElement out(dst);
  for (const auto& [k, c] : a.terms()) out.add_term(row_times(k, H), c);
  return out;
}

TorusElement canonical_projection(const TorusElement& a, const std::function<bool(const Exp&)>& keep) {
  TorusElement r(a.spec());
  for (const auto& [k, c] : a.terms())
    if (keep(k)) r.add_term(k, c);
  return r;
}

}  // namespace qtrace
