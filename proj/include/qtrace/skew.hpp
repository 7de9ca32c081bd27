#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qtrace/torus.hpp"

namespace qtrace {

// Skew-field expression over one quantum torus: torus elements combined by sums,
// ordered products with a scalar prefactor, and formal inverses. Never simplified.
class SkewExpr;
using ExprPtr = std::shared_ptr<const SkewExpr>;

class SkewExpr {
 public:
  enum class Kind { Leaf, Sum, Product, Inverse };

  static ExprPtr leaf(TorusElement e);
  static ExprPtr sum(std::vector<std::pair<Scalar, ExprPtr>> terms, SpecPtr spec);
  static ExprPtr product(std::vector<ExprPtr> factors, Scalar prefactor, SpecPtr spec);
  static ExprPtr inverse(ExprPtr arg);

  Kind kind() const { return kind_; }
  const SpecPtr& spec() const { return spec_; }
  const TorusElement& element() const { return *leaf_; }
  const std::vector<std::pair<Scalar, ExprPtr>>& terms() const { return terms_; }
  const std::vector<ExprPtr>& factors() const { return factors_; }
  const Scalar& prefactor() const { return prefactor_; }
  const ExprPtr& arg() const { return arg_; }

 private:
  Kind kind_ = Kind::Leaf;
  SpecPtr spec_;
  std::optional<TorusElement> leaf_;
  std::vector<std::pair<Scalar, ExprPtr>> terms_;
  std::vector<ExprPtr> factors_;
  Scalar prefactor_ = 1;
  ExprPtr arg_;
};

std::string to_string(const ExprPtr& e);
void collect_exponents(const ExprPtr& e, std::set<Exp>& out);
std::size_t count_inverses(const ExprPtr& e);

// Exact value when every inverse is applied to a single monomial.
std::optional<TorusElement> expand(const ExprPtr& e);

// Rebuild with each leaf replaced; the result lives over `spec`.
ExprPtr map_leaves(const ExprPtr& e, const std::function<ExprPtr(const TorusElement&)>& f, const SpecPtr& spec);

}  // namespace qtrace
