#pragma once

#include <optional>
#include <string>

#include "qtrace/curves.hpp"
#include "qtrace/shear.hpp"
#include "qtrace/torus.hpp"

namespace qtrace {

struct TraceResult {
  TorusElement shear;  // over Y(T)
  TorusElement skein;  // over X^(1/2)(T)
  std::size_t state_count = 0;
};

// Sum over admissible colorings of y^C; skein side is its image under psi.
TraceResult trace_simple(const Triangulation& T, const NormalCurve& c);

// Independent skein-side computation: resolve each triangle's corner arc by the smoothing
// table and divide by the crossed-edge monomial.
TorusElement oracle_resolution(const Triangulation& T, const NormalCurve& c);

// Shear-side state sum with q^(u(s)) phases, cut at an inner edge crossed once.
// Works on generalized triangulations as well.
TorusElement trace_shear(const Triangulation& T, const NormalCurve& c, std::optional<int> base_edge = {});
// First inner edge crossed exactly once, or -1.
int default_base_edge(const Triangulation& T, const NormalCurve& c);

TraceResult trace_once_edge(const Triangulation& T, const NormalCurve& c, std::optional<int> base_edge = {});

// Simple curves use the coloring sum, others the once-crossed formula.
TraceResult trace_any(const Triangulation& T, const NormalCurve& c);

struct KnotMonomialImage {
  Exp k;           // k_alpha over inner edges
  Exp direct;      // k H
  Exp from_pattern;  // 2 * epsilon
  bool equal() const { return direct == from_pattern; }
};
KnotMonomialImage psi_image_of_knot_monomial(const Triangulation& T, const NormalCurve& c);

}  // namespace qtrace
