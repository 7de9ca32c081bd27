#include "qtrace/curves.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace qtrace {

void validate_curve(const Triangulation& T, const NormalCurve& c) {
  if (c.steps.empty()) throw CurveError("curve has no steps");
  std::size_t n = c.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Step& st = c.steps[j];
    if (st.tri < 0 || st.tri >= static_cast<int>(T.num_triangles())) throw CurveError("step triangle out of range");
    if (st.in < 0 || st.in > 2 || st.out < 0 || st.out > 2) throw CurveError("step side out of range");
    // Every vertex is a marked point, so a bounce is the only way a step sequence can leave minimal position.
    if (st.in == st.out) throw CurveError("step " + std::to_string(j) + " enters and exits the same side");
    const Step& nx = c.steps[(j + 1) % n];
    int p = T.partner(T.side(st.tri, st.out));
    if (p < 0) throw CurveError("step " + std::to_string(j) + " exits through a boundary edge");
    if (p != T.side(nx.tri, nx.in))
      throw CurveError("steps " + std::to_string(j) + " and " + std::to_string((j + 1) % n) + " are not glued");
  }
}

std::vector<int> crossing_edges(const Triangulation& T, const NormalCurve& c) {
  std::vector<int> r;
  r.reserve(c.size());
  for (const auto& st : c.steps) r.push_back(T.edge_at(st.tri, st.in));
  return r;
}

std::map<int, int> edge_multiplicities(const Triangulation& T, const NormalCurve& c) {
  std::map<int, int> m;
  for (int e : crossing_edges(T, c)) ++m[e];
  return m;
}

Exp knot_exponent(const Triangulation& T, const NormalCurve& c) {
  Exp k(T.inner_edges().size(), 0);
  for (int e : crossing_edges(T, c)) k[T.inner_position(e)] += 1;
  return k;
}

const char* class_name(CurveClass c) {
  switch (c) {
    case CurveClass::Simple: return "simple";
    case CurveClass::AlmostSimple: return "almost-simple";
    case CurveClass::General: return "general";
  }
  return "unknown";
}

CurveClass classify(const Triangulation& T, const NormalCurve& c) {
  int doubles = 0;
  for (auto [e, m] : edge_multiplicities(T, c)) {
    if (m > 2) return CurveClass::General;
    if (m == 2) ++doubles;
  }
  if (doubles == 0) return CurveClass::Simple;
  return doubles == 1 ? CurveClass::AlmostSimple : CurveClass::General;
}

NormalCurve rotated(const NormalCurve& c, std::size_t start) {
  NormalCurve r;
  std::size_t n = c.size();
  for (std::size_t j = 0; j < n; ++j) r.steps.push_back(c.steps[(start + j) % n]);
  return r;
}

NormalCurve reversed(const NormalCurve& c) {
  NormalCurve r;
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) r.steps.push_back({it->tri, it->out, it->in});
  return r;
}

NormalCurve based_at(const Triangulation& T, const NormalCurve& c, int edge) {
  auto pts = crossing_edges(T, c);
  if (std::count(pts.begin(), pts.end(), edge) != 1)
    throw CurveError("edge " + T.label(edge) + " is not crossed exactly once");
  return rotated(c, static_cast<std::size_t>(std::find(pts.begin(), pts.end(), edge) - pts.begin()));
}

bool forbidden(int in, int out, int vi, int vo) {
  int first = vi, follower = vo;
  if ((out - in + 3) % 3 != 1) std::swap(first, follower);
  return first == 1 && follower == -1;
}

std::vector<State> enumerate_states(const Triangulation& T, const NormalCurve& c) {
  (void)T;
  std::size_t n = c.size();
  std::vector<State> out;
  State s(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      const Step& last = c.steps[n - 1];
      if (!forbidden(last.in, last.out, s[n - 1], s[0])) out.push_back(s);
      return;
    }
    for (int v : {1, -1}) {
      s[j] = v;
      if (j > 0) {
        const Step& prev = c.steps[j - 1];
        if (forbidden(prev.in, prev.out, s[j - 1], v)) continue;
      }
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

Exp state_exponents(const Triangulation& T, const NormalCurve& c, const State& s) {
  Exp k(T.inner_edges().size(), 0);
  auto pts = crossing_edges(T, c);
  for (std::size_t j = 0; j < pts.size(); ++j) k[T.inner_position(pts[j])] += s[j];
  return k;
}

std::vector<Coloring> enumerate_colorings(const Triangulation& T, const NormalCurve& c) {
  if (classify(T, c) != CurveClass::Simple) throw CurveError("colorings need a simple curve");
  std::vector<Coloring> r;
  for (const auto& s : enumerate_states(T, c)) r.push_back(state_exponents(T, c, s));
  return r;
}

const char* pattern_name(CrossingPattern p) {
  switch (p) {
    case CrossingPattern::Unchanged: return "unchanged";
    case CrossingPattern::LeftRight: return "left-right";
    case CrossingPattern::RightLeft: return "right-left";
    case CrossingPattern::Multi: return "multi";
    case CrossingPattern::Absent: return "absent";
  }
  return "unknown";
}

CrossingPattern crossing_pattern(const Triangulation& T, const NormalCurve& c, int edge) {
  auto pts = crossing_edges(T, c);
  auto cnt = std::count(pts.begin(), pts.end(), edge);
  if (cnt == 0) return CrossingPattern::Absent;
  if (cnt > 1) return CrossingPattern::Multi;
  std::size_t n = c.size();
  std::size_t j = static_cast<std::size_t>(std::find(pts.begin(), pts.end(), edge) - pts.begin());
  const Step& before = c.steps[(j + n - 1) % n];
  const Step& after = c.steps[j];
  int v = turn(before.in, before.out) + turn(after.out, after.in);
  if (v > 0) return CrossingPattern::RightLeft;
  if (v < 0) return CrossingPattern::LeftRight;
  return CrossingPattern::Unchanged;
}

int epsilon(CrossingPattern p) {
  if (p == CrossingPattern::RightLeft) return 1;
  if (p == CrossingPattern::LeftRight) return -1;
  return 0;
}

Exp epsilon_vector(const Triangulation& T, const NormalCurve& c) {
  Exp eps(T.num_edges(), 0);
  for (int e = 0; e < static_cast<int>(T.num_edges()); ++e) eps[e] = epsilon(crossing_pattern(T, c, e));
  return eps;
}

namespace {

struct LiftedPoint {
  int side;  // side index in the triangle
  int state;
  std::size_t step;
};

// Per-triangle lifted crossing points in traversal order.
std::map<int, std::vector<LiftedPoint>> lifted_points(const NormalCurve& c, const State& s) {
  std::map<int, std::vector<LiftedPoint>> per;
  std::size_t n = c.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Step& st = c.steps[j];
    per[st.tri].push_back({st.in, s[j], j});
    per[st.tri].push_back({st.out, s[(j + 1) % n], j});
  }
  return per;
}

int local_face(int from, int to) {
  if ((to - from + 3) % 3 == 1) return 1;
  if ((from - to + 3) % 3 == 1) return -1;
  return 0;
}

}  // namespace

std::pair<long, long> u_split(const Triangulation& T, const NormalCurve& c, const State& s) {
  (void)T;
  long same = 0, all = 0;
  for (const auto& [t, pts] : lifted_points(c, s))
    for (std::size_t x = 0; x < pts.size(); ++x)
      for (std::size_t y = x + 1; y < pts.size(); ++y) {
        long v = local_face(pts[x].side, pts[y].side) * pts[x].state * pts[y].state;
        all += v;
        if (pts[x].step == pts[y].step) same += v;
      }
  // eighths: u1 = +1/2 * same, u2 = -1/2 * all
  return {4 * same, -4 * all};
}

long u_of_state(const Triangulation& T, const NormalCurve& c, const State& s) {
  (void)T;
  long tot = 0;
  for (const auto& [t, pts] : lifted_points(c, s))
    for (std::size_t x = 0; x < pts.size(); ++x)
      for (std::size_t y = x + 1; y < pts.size(); ++y) {
        if (pts[x].step == pts[y].step) continue;
        tot += local_face(pts[x].side, pts[y].side) * pts[x].state * pts[y].state;
      }
  return -4 * tot;
}

std::vector<NormalCurve> curves_from_coordinates(const Triangulation& T, const std::map<std::string, int>& counts) {
  for (const auto& [l, v] : counts) {
    int e = T.edge_index(l);
    if (v < 0) throw CurveError("negative normal coordinate on " + l);
    if (v > 0 && !T.is_inner(e)) throw CurveError("closed curves cannot cross boundary edge " + l);
  }
  std::size_t ns = T.num_sides();
  std::vector<int> n(ns, 0);
  for (std::size_t s = 0; s < ns; ++s) {
    auto it = counts.find(T.label(T.edge_of_side(static_cast<int>(s))));
    n[s] = it == counts.end() ? 0 : it->second;
  }
  using Pt = std::pair<int, int>;
  std::map<Pt, Pt> conn;
  for (int t = 0; t < static_cast<int>(T.num_triangles()); ++t)
    for (int i = 0; i < 3; ++i) {
      int s0 = T.side(t, i), s1 = T.side(t, i + 1), s2 = T.side(t, i + 2);
      int x2 = n[s0] + n[s1] - n[s2];
      if (x2 < 0 || x2 % 2 != 0) throw CurveError("normal coordinates violate the triangle conditions");
      for (int r = 0; r < x2 / 2; ++r) {
        Pt p{s0, n[s0] - 1 - r}, q{s1, r};
        conn[p] = q;
        conn[q] = p;
      }
    }
  std::set<Pt> seen;
  std::vector<NormalCurve> comps;
  for (int s = 0; s < static_cast<int>(ns); ++s)
    for (int p = 0; p < n[s]; ++p) {
      Pt start{s, p};
      if (seen.count(start)) continue;
      NormalCurve c;
      Pt cur = start;
      while (true) {
        seen.insert(cur);
        Pt nx = conn.at(cur);
        seen.insert(nx);
        c.steps.push_back({cur.first / 3, cur.first % 3, nx.first % 3});
        int ps = T.partner(nx.first);
        cur = {ps, n[ps] - 1 - nx.second};
        if (cur == start) break;
      }
      comps.push_back(std::move(c));
    }
  return comps;
}

}  // namespace qtrace
