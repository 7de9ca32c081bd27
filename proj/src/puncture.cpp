#include "qtrace/puncture.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qtrace/shear.hpp"
#include "qtrace/trace.hpp"

namespace qtrace {

LiftData lift(const Triangulation& source, const LiftOptions& opts) {
  validate(source);
  LiftData L{source, source, {}, {}, {}, {}, {}, {}};
  std::set<std::string> used(source.labels().begin(), source.labels().end());
  auto fresh = [&](std::string base) {
    while (used.count(base)) base += "'";
    used.insert(base);
    return base;
  };
  auto interior = source.interior_vertices();
  for (const auto& [p, corner] : opts.corners)
    if (std::find(interior.begin(), interior.end(), p) == interior.end())
      throw std::invalid_argument("lift corner given for " + std::to_string(p) + ", which is not an interior point");
  std::map<std::pair<int, int>, int> disks;
  for (int p : interior) {
    std::pair<int, int> corner{-1, -1};
    auto it = opts.corners.find(p);
    if (it != opts.corners.end()) {
      corner = it->second;
      if (corner.first < 0 || corner.first >= static_cast<int>(source.num_triangles()) || corner.second < 0 ||
          corner.second > 2 || source.corner_vertex(source.side(corner.first, corner.second)) != p)
        throw std::invalid_argument("lift corner does not belong to interior point " + std::to_string(p));
    } else {
      for (int c = 0; c < static_cast<int>(source.num_sides()); ++c)
        if (source.corner_vertex(c) == p) {
          corner = {c / 3, c % 3};
          break;
        }
    }
    disks[corner] = p;
  }
  bool prev = opts.rule == LiftOptions::Rule::Prev;
  std::vector<Triangulation::Triple> tris;
  std::map<std::string, std::string> diag_origin;
  for (int t = 0; t < static_cast<int>(source.num_triangles()); ++t) {
    auto K = source.triangle_labels(t);
    auto main = K;
    for (int j = 0; j < 3; ++j) {
      auto d = disks.find({t, j});
      if (d == disks.end()) continue;
      int p = d->second;
      std::string cp = fresh("c" + std::to_string(p)), dp = fresh("d" + std::to_string(p));
      int side = prev ? (j + 2) % 3 : j;
      FakeTriangle f{p, static_cast<int>(tris.size()), cp, dp, K[side]};
      if (prev) tris.push_back({K[side], cp, dp});
      else tris.push_back({cp, K[side], dp});
      main[side] = dp;
      diag_origin[dp] = K[side];
      L.consumed[{t, side}] = {f.triangle, prev ? 0 : 1};
      L.loops.push_back(cp);
      L.fakes.push_back(f);
    }
    L.main_triangle.push_back(static_cast<int>(tris.size()));
    tris.push_back(main);
  }
  L.target = Triangulation::from_labels(tris);
  validate(L.target, true);
  for (const auto& l : L.target.labels()) {
    if (std::find(L.loops.begin(), L.loops.end(), l) != L.loops.end()) continue;
    auto it = diag_origin.find(l);
    L.omega[l] = it == diag_origin.end() ? l : it->second;
  }
  const auto& src_inner = source.inner_edges();
  const auto& dst_inner = L.target.inner_edges();
  L.Omega = IntMatrix(src_inner.size(), dst_inner.size());
  for (std::size_t j = 0; j < dst_inner.size(); ++j) {
    auto it = L.omega.find(L.target.label(dst_inner[j]));
    if (it == L.omega.end()) continue;
    int e = source.edge_index(it->second);
    int pos = source.inner_position(e);
    if (pos >= 0) L.Omega(pos, j) = 1;
  }
  return L;
}

NormalCurve lift_curve(const LiftData& L, const NormalCurve& c, std::vector<int>* origin) {
  validate_curve(L.source, c);
  NormalCurve out;
  std::vector<int> org;
  int n = static_cast<int>(c.size());
  for (int j = 0; j < n; ++j) {
    const Step& s = c.steps[j];
    auto in = L.consumed.find({s.tri, s.in});
    if (in != L.consumed.end()) {
      out.steps.push_back({in->second.first, in->second.second, 2});
      org.push_back(j);
    }
    out.steps.push_back({L.main_triangle[s.tri], s.in, s.out});
    org.push_back(j);
    auto ot = L.consumed.find({s.tri, s.out});
    if (ot != L.consumed.end()) {
      out.steps.push_back({ot->second.first, 2, ot->second.second});
      org.push_back((j + 1) % n);
    }
  }
  validate_curve(L.target, out);
  if (origin) *origin = std::move(org);
  return out;
}

BarMatrices bar_matrices(const LiftData& L) {
  BarMatrices b;
  b.Omega = L.Omega;
  b.Hbar = L.Omega * shear_matrix(L.target);
  b.Qbar = L.Omega * inner_face_matrix(L.target) * L.Omega.transpose();
  b.qbar_ok = b.Qbar == inner_face_matrix(L.source);
  b.hph_ok = b.Hbar * vertex_matrix(L.target) * b.Hbar.transpose() == b.Qbar * -4;
  b.rank_ok = rank(b.Hbar) == L.source.inner_edges().size();
  return b;
}

TorusElement bar_projection(const LiftData& L, const TorusElement& a) {
  std::vector<int> loop_idx;
  for (const auto& l : L.loops) loop_idx.push_back(a.spec()->index(l));
  return canonical_projection(a, [&](const Exp& k) {
    bool keep = true;
    for (int i : loop_idx) {
      if (i < 0) continue;
      if (k[i] < 0) throw std::invalid_argument("negative loop exponent outside the positive part");
      if (k[i] > 0) keep = false;
    }
    return keep;
  });
}

TorusElement bar_psi(const LiftData& L, const TorusElement& a) {
  BarMatrices b = bar_matrices(L);
  if (!b.ok()) throw std::runtime_error("lift matrices fail their identities");
  return mlh_apply(b.Hbar, skein_spec(L.target), a, -4);
}

EquivariantStates equivariant_states(const LiftData& L, const NormalCurve& c) {
  EquivariantStates r;
  std::vector<int> origin;
  NormalCurve lc = lift_curve(L, c, &origin);
  auto all = enumerate_states(L.target, lc);
  r.admissible_total = all.size();
  std::size_t n = c.size();
  r.exponents_match = true;
  for (const auto& s : all) {
    State bar(n, 0);
    bool eq = true;
    for (std::size_t x = 0; x < s.size() && eq; ++x) {
      int& slot = bar[origin[x]];
      if (slot == 0) slot = s[x];
      else if (slot != s[x]) eq = false;
    }
    if (!eq) continue;
    r.target_states.push_back(s);
    r.restricted.push_back(bar);
    Exp lhs = state_exponents(L.target, lc, s);
    Exp rhs = row_times(state_exponents(L.source, c, bar), L.Omega);
    if (lhs != rhs) r.exponents_match = false;
  }
  auto src = enumerate_states(L.source, c);
  std::set<State> a(r.restricted.begin(), r.restricted.end()), b(src.begin(), src.end());
  r.bijective = a.size() == r.restricted.size() && a == b;
  return r;
}

BarTraceResult bar_trace(const LiftData& L, const NormalCurve& c) {
  int a = default_base_edge(L.source, c);
  if (a < 0) throw CurveError("no inner edge is crossed exactly once");
  BarTraceResult r{trace_shear(L.source, c, a), TorusElement(skein_spec(L.target)), TorusElement(skein_spec(L.target)),
                   false};
  r.skein = bar_psi(L, r.shear);
  NormalCurve lc = lift_curve(L, c);
  int at = L.target.edge_index(L.source.label(a));
  TorusElement full = shear_to_skein(L.target, trace_shear(L.target, lc, at));
  r.projected = bar_projection(L, full);
  r.agree = r.projected == r.skein;
  return r;
}

}  // namespace qtrace
