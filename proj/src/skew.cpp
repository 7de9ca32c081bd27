#include "qtrace/skew.hpp"

#include <sstream>
#include <stdexcept>

namespace qtrace {

ExprPtr SkewExpr::leaf(TorusElement e) {
  auto x = std::make_shared<SkewExpr>();
  x->kind_ = Kind::Leaf;
  x->spec_ = e.spec();
  x->leaf_ = std::move(e);
  return x;
}

ExprPtr SkewExpr::sum(std::vector<std::pair<Scalar, ExprPtr>> terms, SpecPtr spec) {
  auto x = std::make_shared<SkewExpr>();
  x->kind_ = Kind::Sum;
  x->spec_ = std::move(spec);
  x->terms_ = std::move(terms);
  return x;
}

ExprPtr SkewExpr::product(std::vector<ExprPtr> factors, Scalar prefactor, SpecPtr spec) {
  auto x = std::make_shared<SkewExpr>();
  x->kind_ = Kind::Product;
  x->spec_ = std::move(spec);
  x->factors_ = std::move(factors);
  x->prefactor_ = std::move(prefactor);
  return x;
}

ExprPtr SkewExpr::inverse(ExprPtr arg) {
  if (arg->kind() == Kind::Leaf && arg->element().is_zero()) throw std::invalid_argument("inverse of zero");
  auto x = std::make_shared<SkewExpr>();
  x->kind_ = Kind::Inverse;
  x->spec_ = arg->spec();
  x->arg_ = std::move(arg);
  return x;
}

namespace {

void render(const ExprPtr& e, std::ostream& os) {
  switch (e->kind()) {
    case SkewExpr::Kind::Leaf:
      os << '{' << e->element().str() << '}';
      break;
    case SkewExpr::Kind::Sum: {
      os << "sum(";
      bool first = true;
      for (const auto& [c, x] : e->terms()) {
        if (!first) os << ", ";
        first = false;
        os << '(' << c.str() << ")*";
        render(x, os);
      }
      os << ')';
      break;
    }
    case SkewExpr::Kind::Product: {
      os << "prod[" << e->prefactor().str() << "](";
      bool first = true;
      for (const auto& x : e->factors()) {
        if (!first) os << ", ";
        first = false;
        render(x, os);
      }
      os << ')';
      break;
    }
    case SkewExpr::Kind::Inverse:
      os << "inv(";
      render(e->arg(), os);
      os << ')';
      break;
  }
}

}  // namespace

std::string to_string(const ExprPtr& e) {
  std::ostringstream os;
  render(e, os);
  return os.str();
}

void collect_exponents(const ExprPtr& e, std::set<Exp>& out) {
  switch (e->kind()) {
    case SkewExpr::Kind::Leaf:
      for (const auto& [k, c] : e->element().terms()) out.insert(k);
      break;
    case SkewExpr::Kind::Sum:
      for (const auto& [c, x] : e->terms()) collect_exponents(x, out);
      break;
    case SkewExpr::Kind::Product:
      for (const auto& x : e->factors()) collect_exponents(x, out);
      break;
    case SkewExpr::Kind::Inverse:
      collect_exponents(e->arg(), out);
      break;
  }
}

std::size_t count_inverses(const ExprPtr& e) {
  switch (e->kind()) {
    case SkewExpr::Kind::Leaf: return 0;
    case SkewExpr::Kind::Sum: {
      std::size_t n = 0;
      for (const auto& [c, x] : e->terms()) n += count_inverses(x);
      return n;
    }
    case SkewExpr::Kind::Product: {
      std::size_t n = 0;
      for (const auto& x : e->factors()) n += count_inverses(x);
      return n;
    }
    case SkewExpr::Kind::Inverse: return 1 + count_inverses(e->arg());
  }
  return 0;
}

std::optional<TorusElement> expand(const ExprPtr& e) {
  switch (e->kind()) {
    case SkewExpr::Kind::Leaf:
      return e->element();
    case SkewExpr::Kind::Sum: {
      TorusElement r(e->spec());
      for (const auto& [c, x] : e->terms()) {
        auto v = expand(x);
        if (!v) return std::nullopt;
        r = r + v->scaled(c);
      }
      return r;
    }
    case SkewExpr::Kind::Product: {
      TorusElement r = TorusElement::one(e->spec());
      for (const auto& x : e->factors()) {
        auto v = expand(x);
        if (!v) return std::nullopt;
        r = r * *v;
      }
      return r.scaled(e->prefactor());
    }
    case SkewExpr::Kind::Inverse: {
      auto v = expand(e->arg());
      if (!v || v->size() != 1 || !v->terms().begin()->second.unit_power()) return std::nullopt;
      return v->pow(-1);
    }
  }
  return std::nullopt;
}

ExprPtr map_leaves(const ExprPtr& e, const std::function<ExprPtr(const TorusElement&)>& f, const SpecPtr& spec) {
  switch (e->kind()) {
    case SkewExpr::Kind::Leaf:
      return f(e->element());
    case SkewExpr::Kind::Sum: {
      std::vector<std::pair<Scalar, ExprPtr>> t;
      for (const auto& [c, x] : e->terms()) t.emplace_back(c, map_leaves(x, f, spec));
      return SkewExpr::sum(std::move(t), spec);
    }
    case SkewExpr::Kind::Product: {
      std::vector<ExprPtr> fs;
      for (const auto& x : e->factors()) fs.push_back(map_leaves(x, f, spec));
      return SkewExpr::product(std::move(fs), e->prefactor(), spec);
    }
    case SkewExpr::Kind::Inverse:
      return SkewExpr::inverse(map_leaves(e->arg(), f, spec));
  }
  return e;
}

}  // namespace qtrace
