#pragma once

#include <optional>

#include "qtrace/surface.hpp"
#include "qtrace/torus.hpp"

namespace qtrace {

// Y(T) = T(inner face matrix, q^-1) over the inner edges.
SpecPtr shear_spec(const Triangulation& T);
// X^(1/2)(T) = T(P, q^(1/4)) over all edges; X_a = x_a^2.
SpecPtr skein_spec(const Triangulation& T);

// k over inner edges; every triangle sum (boundary edges count 0) is even.
bool is_balanced(const Triangulation& T, const Exp& k);

struct BalancedSplit {
  Exp parity;  // entries in {0,1}
  Exp even;
};
BalancedSplit balanced_decompose(const Triangulation& T, const Exp& k);

struct EvenImageReport {
  Exp image;  // kH
  bool balanced = false;
  bool even = false;
  bool consistent() const { return balanced == even; }
};
EvenImageReport even_image_check(const Triangulation& T, const Exp& k);

TorusElement shear_to_skein(const Triangulation& T, const TorusElement& a);

// k with kH = m, when it exists (uses H P = 4 * inclusion).
std::optional<Exp> skein_preimage(const Triangulation& T, const Exp& m);

}  // namespace qtrace
