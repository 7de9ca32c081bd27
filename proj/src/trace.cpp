#include "qtrace/trace.hpp"

#include <algorithm>

namespace qtrace {

TraceResult trace_simple(const Triangulation& T, const NormalCurve& c) {
  validate_curve(T, c);
  if (classify(T, c) != CurveClass::Simple) throw CurveError("curve is not simple");
  SpecPtr Y = shear_spec(T);
  TraceResult r{TorusElement(Y), TorusElement(skein_spec(T)), 0};
  for (const auto& C : enumerate_colorings(T, c)) {
    r.shear.add_term(C, 1);
    ++r.state_count;
  }
  r.skein = shear_to_skein(T, r.shear);
  return r;
}

TorusElement oracle_resolution(const Triangulation& T, const NormalCurve& c) {
  validate_curve(T, c);
  if (classify(T, c) != CurveClass::Simple) throw CurveError("curve is not simple");
  SpecPtr X = skein_spec(T);
  auto pts = crossing_edges(T, c);
  std::size_t n = c.size();
  Exp crossed(T.num_edges(), 0);
  for (int e : pts) crossed[e] = 2;
  TorusElement out(X);
  std::vector<int> value(T.num_edges(), 0);
  std::size_t total = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < total; ++mask) {
    for (std::size_t j = 0; j < n; ++j) value[pts[j]] = (mask >> j & 1) ? -1 : 1;
    Exp m(T.num_edges(), 0);
    bool vanishes = false;
    for (std::size_t j = 0; j < n && !vanishes; ++j) {
      const Step& st = c.steps[j];
      // Orient the corner so that `a` follows `b` counterclockwise.
      int sb = st.in, sa = st.out;
      if (turn(st.in, st.out) != 1) std::swap(sa, sb);
      int sc = 3 - sa - sb;
      int ca = value[T.edge_at(st.tri, sa)], cb = value[T.edge_at(st.tri, sb)];
      int arc;
      if (ca == -1 && cb == 1) vanishes = true;
      else if (ca == 1 && cb == -1) arc = sc;
      else if (ca == -1) arc = sb;
      else arc = sa;
      if (!vanishes) m[T.edge_at(st.tri, arc)] += 2;
    }
    if (vanishes) continue;
    // Reflection invariance pins every surviving coefficient to 1.
    out.add_term(m - crossed, 1);
  }
  return out;
}

int default_base_edge(const Triangulation& T, const NormalCurve& c) {
  auto pts = crossing_edges(T, c);
  for (int e : pts)
    if (T.is_inner(e) && std::count(pts.begin(), pts.end(), e) == 1) return e;
  return -1;
}

TorusElement trace_shear(const Triangulation& T, const NormalCurve& c, std::optional<int> base_edge) {
  validate_curve(T, c);
  int a = base_edge ? *base_edge : default_base_edge(T, c);
  if (a < 0) throw CurveError("no inner edge is crossed exactly once");
  NormalCurve based = based_at(T, c, a);
  TorusElement r(shear_spec(T));
  for (const auto& s : enumerate_states(T, based))
    r.add_term(state_exponents(T, based, s), Scalar::monomial(static_cast<int>(u_of_state(T, based, s))));
  return r;
}

TraceResult trace_once_edge(const Triangulation& T, const NormalCurve& c, std::optional<int> base_edge) {
  TraceResult r{trace_shear(T, c, base_edge), TorusElement(skein_spec(T)), 0};
  r.state_count = enumerate_states(T, c).size();
  r.skein = shear_to_skein(T, r.shear);
  return r;
}

TraceResult trace_any(const Triangulation& T, const NormalCurve& c) {
  if (classify(T, c) == CurveClass::Simple) return trace_simple(T, c);
  return trace_once_edge(T, c);
}

KnotMonomialImage psi_image_of_knot_monomial(const Triangulation& T, const NormalCurve& c) {
  validate_curve(T, c);
  if (classify(T, c) == CurveClass::General) throw CurveError("curve is neither simple nor almost simple");
  KnotMonomialImage r;
  r.k = knot_exponent(T, c);
  r.direct = row_times(r.k, shear_matrix(T));
  r.from_pattern = 2 * epsilon_vector(T, c);
  return r;
}

}  // namespace qtrace
