#include "qtrace/surface.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qtrace {

const char* kind_name(SurfaceError::Kind k) {
  switch (k) {
    case SurfaceError::Kind::Gluing: return "gluing";
    case SurfaceError::Kind::Disconnected: return "disconnected";
    case SurfaceError::Kind::Monogon: return "monogon";
    case SurfaceError::Kind::Digon: return "digon";
    case SurfaceError::Kind::SmallSphere: return "sphere-with-at-most-two-points";
    case SurfaceError::Kind::SelfFolded: return "self-folded";
    case SurfaceError::Kind::BadEdge: return "bad-edge";
    case SurfaceError::Kind::Generalized: return "generalized";
    case SurfaceError::Kind::Input: return "input";
  }
  return "unknown";
}

void check_triangulable(const Topology& topo) {
  std::size_t b = topo.boundary_marks.size();
  for (int m : topo.boundary_marks)
    if (m < 1) throw SurfaceError(SurfaceError::Kind::Input, "boundary component without marked point");
  if (topo.genus == 0 && b == 0 && topo.interior_points <= 2)
    throw SurfaceError(SurfaceError::Kind::SmallSphere, "sphere with at most two marked points");
  if (topo.genus == 0 && b == 1 && topo.interior_points == 0) {
    if (topo.boundary_marks[0] == 1) throw SurfaceError(SurfaceError::Kind::Monogon, "monogon");
    if (topo.boundary_marks[0] == 2) throw SurfaceError(SurfaceError::Kind::Digon, "digon");
  }
}

Triangulation Triangulation::from_labels(const std::vector<Triple>& triangles) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<int>> sides;
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (int i = 0; i < 3; ++i) {
      const auto& l = triangles[t][i];
      if (l.empty()) throw SurfaceError(SurfaceError::Kind::Input, "empty edge label");
      auto& v = sides[l];
      if (v.empty()) order.push_back(l);
      v.push_back(static_cast<int>(3 * t + i));
      if (v.size() > 2) throw SurfaceError(SurfaceError::Kind::Gluing, "edge " + l + " used by more than two sides");
    }
  std::vector<std::pair<int, int>> gluing;
  std::vector<std::string> side_labels(3 * triangles.size());
  for (const auto& [l, v] : sides) {
    if (v.size() == 2) gluing.emplace_back(v[0], v[1]);
    for (int s : v) side_labels[s] = l;
  }
  return from_gluing(triangles.size(), gluing, side_labels);
}

Triangulation Triangulation::from_gluing(std::size_t num_triangles, const std::vector<std::pair<int, int>>& gluing,
                                         const std::vector<std::string>& side_labels) {
  if (num_triangles == 0) throw SurfaceError(SurfaceError::Kind::Input, "no triangles");
  int n = static_cast<int>(3 * num_triangles);
  if (!side_labels.empty() && side_labels.size() != static_cast<std::size_t>(n))
    throw SurfaceError(SurfaceError::Kind::Input, "side label count mismatch");
  Triangulation T;
  T.partner_.assign(n, -1);
  for (auto [a, b] : gluing) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw SurfaceError(SurfaceError::Kind::Gluing, "gluing side out of range");
    if (a == b) throw SurfaceError(SurfaceError::Kind::Gluing, "side glued to itself");
    if (T.partner_[a] >= 0 || T.partner_[b] >= 0)
      throw SurfaceError(SurfaceError::Kind::Gluing, "side glued more than once");
    T.partner_[a] = b;
    T.partner_[b] = a;
  }
  T.edge_of_side_.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (T.edge_of_side_[s] >= 0) continue;
    int e = static_cast<int>(T.labels_.size());
    T.edge_of_side_[s] = e;
    int p = T.partner_[s];
    if (p >= 0) T.edge_of_side_[p] = e;
    if (side_labels.empty()) {
      T.labels_.push_back("e" + std::to_string(e));
    } else {
      if (p >= 0 && side_labels[p] != side_labels[s])
        throw SurfaceError(SurfaceError::Kind::Input, "glued sides carry different labels");
      T.labels_.push_back(side_labels[s]);
    }
  }
  std::set<std::string> seen(T.labels_.begin(), T.labels_.end());
  if (seen.size() != T.labels_.size()) throw SurfaceError(SurfaceError::Kind::Input, "duplicate edge label");
  T.derive();
  return T;
}

void Triangulation::derive() {
  int n = static_cast<int>(partner_.size());
  sides_of_edge_.assign(labels_.size(), {-1, -1});
  for (int s = 0; s < n; ++s) {
    auto& se = sides_of_edge_[edge_of_side_[s]];
    if (se[0] < 0) se[0] = s;
    else se[1] = s;
  }
  inner_.clear();
  boundary_.clear();
  inner_pos_.assign(labels_.size(), -1);
  for (int e = 0; e < static_cast<int>(labels_.size()); ++e) {
    if (is_inner(e)) {
      inner_pos_[e] = static_cast<int>(inner_.size());
      inner_.push_back(e);
    } else {
      boundary_.push_back(e);
    }
  }
  std::vector<int> par(n);
  std::iota(par.begin(), par.end(), 0);
  auto find = [&](int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  for (int s = 0; s < n; ++s) {
    int p = partner_[s];
    if (p < 0) continue;
    int t = s / 3, i = s % 3, t2 = p / 3, i2 = p % 3;
    par[find(3 * t + i)] = find(3 * t2 + (i2 + 1) % 3);
    par[find(3 * t + (i + 1) % 3)] = find(3 * t2 + i2);
  }
  std::map<int, int> root_id;
  corner_vertex_.assign(n, -1);
  for (int c = 0; c < n; ++c) {
    int r = find(c);
    auto it = root_id.find(r);
    if (it == root_id.end()) it = root_id.emplace(r, static_cast<int>(root_id.size())).first;
    corner_vertex_[c] = it->second;
  }
  num_vertices_ = static_cast<int>(root_id.size());
  vertex_interior_.assign(num_vertices_, true);
  for (int s = 0; s < n; ++s) {
    if (partner_[s] >= 0) continue;
    vertex_interior_[corner_vertex_[s]] = false;
    vertex_interior_[corner_vertex_[3 * (s / 3) + (s % 3 + 1) % 3]] = false;
  }
}

int Triangulation::edge_index(const std::string& label) const {
  for (std::size_t e = 0; e < labels_.size(); ++e)
    if (labels_[e] == label) return static_cast<int>(e);
  throw SurfaceError(SurfaceError::Kind::BadEdge, "unknown edge " + label);
}

std::vector<int> Triangulation::interior_vertices() const {
  std::vector<int> r;
  for (int v = 0; v < num_vertices_; ++v)
    if (vertex_interior_[v]) r.push_back(v);
  return r;
}

std::vector<std::string> Triangulation::inner_labels() const {
  std::vector<std::string> r;
  for (int e : inner_) r.push_back(labels_[e]);
  return r;
}

int Triangulation::inner_position(int edge) const { return inner_pos_[edge]; }

bool Triangulation::self_folded(int t) const {
  int a = edge_at(t, 0), b = edge_at(t, 1), c = edge_at(t, 2);
  return a == b || b == c || a == c;
}

bool Triangulation::generalized() const {
  return std::any_of(vertex_interior_.begin(), vertex_interior_.end(), [](bool b) { return b; });
}

Triangulation::Triple Triangulation::triangle_labels(int t) const {
  return {labels_[edge_at(t, 0)], labels_[edge_at(t, 1)], labels_[edge_at(t, 2)]};
}

std::vector<Triangulation::Triple> Triangulation::all_triangle_labels() const {
  std::vector<Triple> r;
  for (std::size_t t = 0; t < num_triangles(); ++t) r.push_back(triangle_labels(static_cast<int>(t)));
  return r;
}

Topology Triangulation::topology() const {
  Topology topo;
  topo.vertices = num_vertices_;
  topo.edges = static_cast<int>(labels_.size());
  topo.faces = static_cast<int>(num_triangles());
  topo.euler = topo.vertices - topo.edges + topo.faces;
  std::map<int, int> outgoing;  // boundary vertex -> boundary side leaving it
  for (int s = 0; s < static_cast<int>(num_sides()); ++s)
    if (partner_[s] < 0) outgoing[corner_vertex_[s]] = s;
  std::set<int> visited;
  for (int s = 0; s < static_cast<int>(num_sides()); ++s) {
    if (partner_[s] >= 0 || visited.count(s)) continue;
    int len = 0, cur = s;
    do {
      visited.insert(cur);
      ++len;
      int end = corner_vertex_[3 * (cur / 3) + (cur % 3 + 1) % 3];
      cur = outgoing.at(end);
    } while (cur != s && len <= static_cast<int>(num_sides()));
    topo.boundary_marks.push_back(len);
  }
  for (bool b : vertex_interior_) topo.interior_points += b ? 1 : 0;
  int b = static_cast<int>(topo.boundary_marks.size());
  topo.genus = (2 - b - topo.euler) / 2;
  return topo;
}

void validate(const Triangulation& T, bool require_marked) {
  std::size_t nt = T.num_triangles();
  std::vector<bool> seen(nt, false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int i = 0; i < 3; ++i) {
      int p = T.partner(3 * t + i);
      if (p < 0 || seen[p / 3]) continue;
      seen[p / 3] = true;
      ++count;
      stack.push_back(p / 3);
    }
  }
  if (count != nt) throw SurfaceError(SurfaceError::Kind::Disconnected, "surface is not connected");
  check_triangulable(T.topology());
  if (require_marked) {
    for (std::size_t t = 0; t < nt; ++t)
      if (T.self_folded(static_cast<int>(t)))
        throw SurfaceError(SurfaceError::Kind::SelfFolded, "self-folded triangle " + std::to_string(t));
    if (T.generalized()) throw SurfaceError(SurfaceError::Kind::Generalized, "interior marked points present");
  }
}

IntMatrix triangle_face_matrix(const Triangulation& T, int t) {
  IntMatrix Q(T.num_edges(), T.num_edges());
  if (T.self_folded(t)) return Q;
  for (int i = 0; i < 3; ++i) {
    int a = T.edge_at(t, i), b = T.edge_at(t, i + 1);
    Q(a, b) += 1;
    Q(b, a) -= 1;
  }
  return Q;
}

IntMatrix face_matrix(const Triangulation& T) {
  IntMatrix Q(T.num_edges(), T.num_edges());
  for (std::size_t t = 0; t < T.num_triangles(); ++t) Q = Q + triangle_face_matrix(T, static_cast<int>(t));
  return Q;
}

IntMatrix inner_face_matrix(const Triangulation& T) {
  return face_matrix(T).select(T.inner_edges(), T.inner_edges());
}

IntMatrix shear_matrix(const Triangulation& T) { return face_matrix(T).select_rows(T.inner_edges()); }

Exp row_action(const Triangulation& T, const Exp& k, int t) { return row_times(k, triangle_face_matrix(T, t)); }

IntMatrix vertex_matrix(const Triangulation& T) {
  if (T.generalized()) throw SurfaceError(SurfaceError::Kind::Generalized, "vertex matrix needs a marked surface");
  std::size_t n = T.num_edges();
  IntMatrix P(n, n);
  for (int s = 0; s < static_cast<int>(T.num_sides()); ++s) {
    if (T.partner(s) >= 0) continue;
    int t = s / 3, j = s % 3;
    std::vector<int> seq{T.edge_of_side(s)};
    while (true) {
      int inc = T.side(t, j - 1);
      seq.push_back(T.edge_of_side(inc));
      int p = T.partner(inc);
      if (p < 0) break;
      t = p / 3;
      j = p % 3;
    }
    for (std::size_t x = 0; x < seq.size(); ++x)
      for (std::size_t y = x + 1; y < seq.size(); ++y) {
        int a = seq[x], b = seq[y];
        if (a == b) continue;
        P(a, b) += 1;
        P(b, a) -= 1;
      }
  }
  return P;
}

DualityReport duality_check(const Triangulation& T) {
  DualityReport r;
  IntMatrix P = vertex_matrix(T);
  IntMatrix H = shear_matrix(T);
  IntMatrix Qi = inner_face_matrix(T);
  IntMatrix PH = P * H.transpose();
  std::ostringstream msg;
  for (std::size_t i = 0; i < PH.rows(); ++i)
    for (std::size_t j = 0; j < PH.cols(); ++j) {
      long want = (T.inner_edges()[j] == static_cast<int>(i)) ? -4 : 0;
      if (PH(i, j) != want && r.ph_ok) {
        r.ph_ok = false;
        msg << "PH^T(" << T.label(static_cast<int>(i)) << "," << T.label(T.inner_edges()[j]) << ")=" << PH(i, j)
            << " expected " << want << "; ";
      }
    }
  IntMatrix HPH = H * PH;
  for (std::size_t i = 0; i < HPH.rows(); ++i)
    for (std::size_t j = 0; j < HPH.cols(); ++j)
      if (HPH(i, j) != -4 * Qi(i, j) && r.hph_ok) {
        r.hph_ok = false;
        msg << "HPH^T(" << i << "," << j << ")=" << HPH(i, j) << " expected " << -4 * Qi(i, j) << "; ";
      }
  r.rank = rank(H);
  r.rank_ok = r.rank == T.inner_edges().size();
  if (!r.rank_ok) msg << "rank(H)=" << r.rank << " expected " << T.inner_edges().size() << "; ";
  r.ok = r.ph_ok && r.hph_ok && r.rank_ok;
  r.message = msg.str();
  return r;
}

const char* coincidence_name(FlipData::Coincidence c) {
  switch (c) {
    case FlipData::Coincidence::AllDistinct: return "all-distinct";
    case FlipData::Coincidence::BEqualsD: return "b=d";
    case FlipData::Coincidence::CEqualsE: return "c=e";
  }
  return "unknown";
}

std::string flipped_label(const std::string& a) {
  if (!a.empty() && a.back() == '*') return a.substr(0, a.size() - 1);
  return a + "*";
}

std::pair<Triangulation, FlipData> flip(const Triangulation& T, const std::string& a) {
  int e = T.edge_index(a);
  if (!T.is_inner(e)) throw SurfaceError(SurfaceError::Kind::BadEdge, "cannot flip boundary edge " + a);
  auto [s1, s2] = T.sides_of_edge(e);
  FlipData f;
  f.t1 = s1 / 3;
  f.i1 = s1 % 3;
  f.t2 = s2 / 3;
  f.i2 = s2 % 3;
  if (f.t1 == f.t2 || T.self_folded(f.t1) || T.self_folded(f.t2))
    throw SurfaceError(SurfaceError::Kind::BadEdge, "edge " + a + " does not bound a quadrilateral");
  f.a = a;
  f.astar = flipped_label(a);
  if (std::find(T.labels().begin(), T.labels().end(), f.astar) != T.labels().end())
    throw SurfaceError(SurfaceError::Kind::BadEdge, "label " + f.astar + " already in use");
  f.b = T.label(T.edge_at(f.t1, f.i1 + 1));
  f.c = T.label(T.edge_at(f.t1, f.i1 + 2));
  f.d = T.label(T.edge_at(f.t2, f.i2 + 1));
  f.e = T.label(T.edge_at(f.t2, f.i2 + 2));
  bool bd = f.b == f.d, ce = f.c == f.e;
  if (bd && ce) throw SurfaceError(SurfaceError::Kind::BadEdge, "degenerate flip quadrilateral");
  f.coincidence = bd ? FlipData::Coincidence::BEqualsD
                     : (ce ? FlipData::Coincidence::CEqualsE : FlipData::Coincidence::AllDistinct);
  auto tris = T.all_triangle_labels();
  tris[f.t1] = {f.c, f.d, f.astar};
  tris[f.t2] = {f.e, f.b, f.astar};
  return {Triangulation::from_labels(tris), f};
}

namespace {

bool extend(const std::vector<Triangulation::Triple>& A, const std::vector<Triangulation::Triple>& B,
            std::size_t t, std::vector<bool>& used, std::map<std::string, std::string>& fwd,
            std::map<std::string, std::string>& bwd) {
  if (t == A.size()) return true;
  for (std::size_t u = 0; u < B.size(); ++u) {
    if (used[u]) continue;
    for (int rot = 0; rot < 3; ++rot) {
      auto f2 = fwd;
      auto b2 = bwd;
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        const auto& x = A[t][i];
        const auto& y = B[u][(i + rot) % 3];
        auto it = f2.find(x);
        auto jt = b2.find(y);
        if (it != f2.end() && it->second != y) ok = false;
        else if (jt != b2.end() && jt->second != x) ok = false;
        else {
          f2[x] = y;
          b2[y] = x;
        }
      }
      if (!ok) continue;
      used[u] = true;
      if (extend(A, B, t + 1, used, f2, b2)) {
        fwd = std::move(f2);
        bwd = std::move(b2);
        return true;
      }
      used[u] = false;
    }
  }
  return false;
}

}  // namespace

std::optional<std::map<std::string, std::string>> find_relabeling(const Triangulation& A, const Triangulation& B,
                                                                 const std::map<std::string, std::string>& fixed) {
  if (A.num_triangles() != B.num_triangles() || A.num_edges() != B.num_edges()) return std::nullopt;
  auto TA = A.all_triangle_labels();
  auto TB = B.all_triangle_labels();
  std::map<std::string, std::string> fwd = fixed, bwd;
  for (const auto& [x, y] : fixed) bwd[y] = x;
  std::vector<bool> used(TB.size(), false);
  if (!extend(TA, TB, 0, used, fwd, bwd)) return std::nullopt;
  return fwd;
}

bool same_triangulation(const Triangulation& A, const Triangulation& B) {
  std::map<std::string, std::string> id;
  for (const auto& l : A.labels()) id[l] = l;
  return find_relabeling(A, B, id).has_value();
}

namespace library {

namespace {

Triangulation standard_labels(const std::vector<Triangulation::Triple>& tris) {
  std::map<std::string, std::string> rename;
  for (const auto& t : tris)
    for (const auto& l : t)
      if (!rename.count(l)) rename.emplace(l, "e" + std::to_string(rename.size()));
  std::vector<Triangulation::Triple> out;
  for (const auto& t : tris) out.push_back({rename[t[0]], rename[t[1]], rename[t[2]]});
  Triangulation T = Triangulation::from_labels(out);
  validate(T);
  return T;
}

}  // namespace

Triangulation polygon(int n) {
  if (n < 3) throw SurfaceError(SurfaceError::Kind::Input, "polygon needs at least 3 vertices");
  auto key = [](int i, int j) { return "v" + std::to_string(std::min(i, j)) + "_" + std::to_string(std::max(i, j)); };
  std::vector<Triangulation::Triple> tris;
  for (int i = 1; i < n - 1; ++i) tris.push_back({key(0, i), key(i, i + 1), key(i + 1, 0)});
  return standard_labels(tris);
}

Triangulation annulus(int m, int n) {
  if (m < 1 || n < 1) throw SurfaceError(SurfaceError::Kind::Input, "annulus needs a marked point on each boundary");
  int N = m + n;
  auto g = [N](int k) { return "g" + std::to_string(k % N); };
  std::vector<Triangulation::Triple> tris;
  for (int k = 0; k < N; ++k) {
    if (k < m) tris.push_back({"bo" + std::to_string(k), g(k + 1), g(k)});
    else tris.push_back({"bi" + std::to_string(k - m), g(k), g(k + 1)});
  }
  return standard_labels(tris);
}

Triangulation punctured_torus() { return standard_labels({{"a", "b", "c"}, {"a", "b", "c"}}); }

Triangulation thrice_punctured_sphere() { return standard_labels({{"a", "b", "c"}, {"c", "b", "a"}}); }

Triangulation by_name(const std::string& name) {
  if (name.rfind("polygon-", 0) == 0) return polygon(std::stoi(name.substr(8)));
  if (name == "annulus") return annulus();
  if (name.rfind("annulus-", 0) == 0) {
    auto rest = name.substr(8);
    auto dash = rest.find('-');
    if (dash == std::string::npos) throw SurfaceError(SurfaceError::Kind::Input, "annulus-M-N expected");
    return annulus(std::stoi(rest.substr(0, dash)), std::stoi(rest.substr(dash + 1)));
  }
  if (name == "punctured-torus") return punctured_torus();
  if (name == "thrice-punctured-sphere") return thrice_punctured_sphere();
  throw SurfaceError(SurfaceError::Kind::Input, "unknown library surface " + name);
}

std::vector<std::string> marked_names() {
  return {"polygon-3", "polygon-4", "polygon-5", "polygon-6", "polygon-7", "polygon-8",
          "annulus",   "annulus-1-2", "annulus-2-2"};
}

}  // namespace library

}  // namespace qtrace
