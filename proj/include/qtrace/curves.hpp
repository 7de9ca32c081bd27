#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrace/matrix.hpp"
#include "qtrace/surface.hpp"

namespace qtrace {

class CurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Step {
  int tri = 0, in = 0, out = 0;  // side indices 0..2 within the triangle
  bool operator==(const Step&) const = default;
};

// Closed curve as a cyclic list of steps. Crossing point j is where step j enters its triangle.
struct NormalCurve {
  std::vector<Step> steps;
  std::size_t size() const { return steps.size(); }
  bool operator==(const NormalCurve&) const = default;
};

// Gluing consistency, no bounces, no immediate back-and-forth across one edge.
void validate_curve(const Triangulation& T, const NormalCurve& c);

// Edge index of crossing point j.
std::vector<int> crossing_edges(const Triangulation& T, const NormalCurve& c);
std::map<int, int> edge_multiplicities(const Triangulation& T, const NormalCurve& c);
// k_alpha over inner edges.
Exp knot_exponent(const Triangulation& T, const NormalCurve& c);

enum class CurveClass { Simple, AlmostSimple, General };
const char* class_name(CurveClass c);
CurveClass classify(const Triangulation& T, const NormalCurve& c);

NormalCurve rotated(const NormalCurve& c, std::size_t start);
NormalCurve reversed(const NormalCurve& c);
// Rotate so that crossing point 0 lies on the given edge (which must be crossed exactly once).
NormalCurve based_at(const Triangulation& T, const NormalCurve& c, int edge);

// +1 when `to` follows `from` in the counterclockwise side order of a triangle, else -1.
inline int turn(int from, int to) { return ((to - from + 3) % 3 == 1) ? 1 : -1; }

// Forbidden corner assignment for a step entering at side `in` with value vi and leaving at `out` with vo.
bool forbidden(int in, int out, int vi, int vo);

// States: one value per crossing point (index j = crossing point j).
using State = std::vector<int>;
std::vector<State> enumerate_states(const Triangulation& T, const NormalCurve& c);

// Colorings of a simple curve: values over inner edges, zero off the curve.
using Coloring = Exp;
std::vector<Coloring> enumerate_colorings(const Triangulation& T, const NormalCurve& c);

Exp state_exponents(const Triangulation& T, const NormalCurve& c, const State& s);

enum class CrossingPattern { Unchanged, LeftRight, RightLeft, Multi, Absent };
const char* pattern_name(CrossingPattern p);
CrossingPattern crossing_pattern(const Triangulation& T, const NormalCurve& c, int edge);
int epsilon(CrossingPattern p);
// Over all edges.
Exp epsilon_vector(const Triangulation& T, const NormalCurve& c);

// Phase exponent of a state in eighths of q; crossing point 0 must be the cut point.
long u_of_state(const Triangulation& T, const NormalCurve& c, const State& s);
// Same quantity split into the same-step-pairs-excluded sum over corner turns (u1)
// and the cross-step part (u2); u1 + u2 == u_of_state.
std::pair<long, long> u_split(const Triangulation& T, const NormalCurve& c, const State& s);

// Components of the multicurve with the given normal coordinates (per edge label).
std::vector<NormalCurve> curves_from_coordinates(const Triangulation& T, const std::map<std::string, int>& counts);

}  // namespace qtrace
