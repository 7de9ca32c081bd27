#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtrace/curves.hpp"
#include "qtrace/surface.hpp"
#include "qtrace/torus.hpp"

namespace qtrace {

struct LiftOptions {
  // Which polygon vertex the cutting diagonal runs to: the previous one (default) or the next one.
  enum class Rule { Prev, Next } rule = Rule::Prev;
  // Interior vertex -> corner (triangle, corner index) holding its disk; default is the first corner.
  std::map<int, std::pair<int, int>> corners;
};

struct FakeTriangle {
  int point = -1;     // interior vertex of the source
  int triangle = -1;  // triangle index in the target
  std::string loop, diagonal, original;
};

struct LiftData {
  Triangulation source, target;
  std::map<std::string, std::string> omega;  // target label -> source label, loops excluded
  std::vector<std::string> loops;
  std::vector<FakeTriangle> fakes;
  std::map<std::pair<int, int>, std::pair<int, int>> consumed;  // source (t, side) -> (fake triangle, side)
  std::vector<int> main_triangle;                               // source t -> target t
  IntMatrix Omega;                                              // source inner x target inner
};

LiftData lift(const Triangulation& source, const LiftOptions& opts = {});

// The curve in the target; `origin` (if given) receives the source crossing point of each target point.
NormalCurve lift_curve(const LiftData& L, const NormalCurve& c, std::vector<int>* origin = nullptr);

struct BarMatrices {
  IntMatrix Omega, Hbar, Qbar;
  bool qbar_ok = false, hph_ok = false, rank_ok = false;
  bool ok() const { return qbar_ok && hph_ok && rank_ok; }
};
BarMatrices bar_matrices(const LiftData& L);

// Drops terms with a positive loop exponent; throws on a negative one.
TorusElement bar_projection(const LiftData& L, const TorusElement& a);
// y^k -> x^(k Hbar) from Y(source) into X^(1/2)(target).
TorusElement bar_psi(const LiftData& L, const TorusElement& a);

struct EquivariantStates {
  std::vector<State> target_states;  // equivariant admissible states of the lifted curve
  std::vector<State> restricted;     // their restrictions to source crossing points
  std::size_t admissible_total = 0;  // all admissible target states
  bool bijective = false;            // restriction is a bijection onto the source states
  bool exponents_match = false;      // k_s = k_restricted * Omega
};
EquivariantStates equivariant_states(const LiftData& L, const NormalCurve& c);

struct BarTraceResult {
  TorusElement shear;      // over Y(source)
  TorusElement skein;      // bar_psi of shear
  TorusElement projected;  // bar_projection of the target pipeline
  bool agree = false;
};
BarTraceResult bar_trace(const LiftData& L, const NormalCurve& c);

}  // namespace qtrace
