#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtrace/curves.hpp"
#include "qtrace/skew.hpp"
#include "qtrace/surface.hpp"
#include "qtrace/trace.hpp"

namespace qtrace {

// Images of the generators G_v = x^(scale * delta_v) of `source` as expressions over `target`.
struct GeneratorImageMap {
  SpecPtr source, target;
  long scale = 2;
  std::map<std::string, std::pair<ExprPtr, ExprPtr>> images;  // label -> (image of G_v, image of G_v^-1)
  std::optional<FlipData> flip;
};

GeneratorImageMap identity_map(const SpecPtr& spec, long scale = 2);

// Skein side: X(T') -> skew field of X(T) for T' = flip(T, a).
GeneratorImageMap phi_flip(const Triangulation& T, const std::string& a);

// Middle coefficient of the three-term images when two quadrilateral sides coincide.
Scalar coincident_middle_coefficient();

// Shear side: Y^(2)(T') -> skew field of Y(T).
GeneratorImageMap theta_flip(const Triangulation& T, const std::string& a,
                             const Scalar& middle = coincident_middle_coefficient());

// Image of an element of `map.source` whose exponents are multiples of the generator scale.
ExprPtr apply_map(const GeneratorImageMap& map, const TorusElement& el);
// Substitute into every leaf of an expression over `map.source`.
ExprPtr substitute(const GeneratorImageMap& map, const ExprPtr& e);
// outer: source'' -> source', inner: source' -> target; result source'' -> target.
GeneratorImageMap compose(const GeneratorImageMap& inner, const GeneratorImageMap& outer);

enum class FlipSide { Shear, Skein };

struct FlipSequence {
  std::vector<Triangulation> triangulations;  // initial, then after each flip
  std::vector<FlipData> flips;
  GeneratorImageMap composite;  // final torus -> initial torus
};
FlipSequence compose_flips(const Triangulation& T, const std::vector<std::string>& edges, FlipSide side);

// Move a normal curve across a flip; forward maps T -> flip(T), backward the reverse.
NormalCurve transport_curve(const NormalCurve& c, const FlipData& f, bool forward);

struct TransferRecord {
  CrossingPattern pattern = CrossingPattern::Absent;  // how the curve passes a* in T'
  Exp k;       // multiplicities in T over inner edges
  Exp kprime;  // multiplicities in T' over inner edges
  ExprPtr theta_image;  // Theta(y^k') over Y(T)
  ExprPtr lhs;  // Phi(psi'(y^k')) over X(T)
  ExprPtr rhs;  // psi(Theta(y^k')) over X(T)
  bool polynomial = false;  // both sides expand exactly
  bool exact_equal = false;
};
// curve is given in T and must be simple after flipping at a.
TransferRecord knot_monomial_transfer(const Triangulation& T, const NormalCurve& c, const std::string& a);

// Theta applied to the coloring sum of the transported curve, as an expression over Y(T).
ExprPtr theta_of_trace(const Triangulation& T, const NormalCurve& c, const std::string& a,
                       const Scalar& middle = coincident_middle_coefficient());

}  // namespace qtrace
