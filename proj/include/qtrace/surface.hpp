#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrace/matrix.hpp"

namespace qtrace {

class SurfaceError : public std::runtime_error {
 public:
  enum class Kind { Gluing, Disconnected, Monogon, Digon, SmallSphere, SelfFolded, BadEdge, Generalized, Input };
  SurfaceError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* kind_name(SurfaceError::Kind k);

struct Topology {
  int vertices = 0, edges = 0, faces = 0;
  int euler = 0;
  int genus = 0;
  std::vector<int> boundary_marks;  // marked points per boundary component
  int interior_points = 0;
};

// Throws SurfaceError for the excluded small cases.
void check_triangulable(const Topology& topo);

// Triangle t owns sides 3t, 3t+1, 3t+2 in counterclockwise order; side 3t+i runs
// from corner 3t+i to corner 3t+(i+1)%3.
class Triangulation {
 public:
  using Triple = std::array<std::string, 3>;

  // Sides carrying the same label are glued; each label appears once (boundary) or twice (inner).
  static Triangulation from_labels(const std::vector<Triple>& triangles);
  // Explicit side gluing; labels default to e0..eN in order of first appearance.
  static Triangulation from_gluing(std::size_t num_triangles, const std::vector<std::pair<int, int>>& gluing,
                                   const std::vector<std::string>& side_labels = {});

  std::size_t num_triangles() const { return partner_.size() / 3; }
  std::size_t num_sides() const { return partner_.size(); }
  std::size_t num_edges() const { return labels_.size(); }
  int num_vertices() const { return num_vertices_; }

  int partner(int side) const { return partner_[side]; }
  int edge_of_side(int side) const { return edge_of_side_[side]; }
  int side(int t, int i) const { return 3 * t + ((i % 3) + 3) % 3; }
  int edge_at(int t, int i) const { return edge_of_side_[side(t, i)]; }
  const std::string& label(int edge) const { return labels_[edge]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int edge_index(const std::string& label) const;  // throws on unknown label
  std::array<int, 2> sides_of_edge(int edge) const { return sides_of_edge_[edge]; }
  int corner_vertex(int corner) const { return corner_vertex_[corner]; }
  bool vertex_interior(int v) const { return vertex_interior_[v]; }
  std::vector<int> interior_vertices() const;

  bool is_inner(int edge) const { return sides_of_edge_[edge][1] >= 0; }
  const std::vector<int>& inner_edges() const { return inner_; }
  const std::vector<int>& boundary_edges() const { return boundary_; }
  std::vector<std::string> inner_labels() const;
  int inner_position(int edge) const;  // index in inner_edges() or -1

  bool self_folded(int t) const;
  bool generalized() const;
  Triple triangle_labels(int t) const;
  std::vector<Triple> all_triangle_labels() const;

  Topology topology() const;

 private:
  void derive();
  std::vector<int> partner_;
  std::vector<int> edge_of_side_;
  std::vector<std::string> labels_;
  std::vector<std::array<int, 2>> sides_of_edge_;
  std::vector<int> corner_vertex_;
  std::vector<bool> vertex_interior_;
  std::vector<int> inner_, boundary_, inner_pos_;
  int num_vertices_ = 0;
};

// Connectivity, gluing involution, excluded cases; marked class also forbids self-folded triangles.
void validate(const Triangulation& T, bool require_marked = false);

IntMatrix triangle_face_matrix(const Triangulation& T, int t);  // over all edges
IntMatrix face_matrix(const Triangulation& T);                  // Q over all edges
IntMatrix inner_face_matrix(const Triangulation& T);            // Q restricted to inner edges
IntMatrix shear_matrix(const Triangulation& T);                 // H = inner rows of Q
IntMatrix vertex_matrix(const Triangulation& T);                // P, marked class only
Exp row_action(const Triangulation& T, const Exp& k, int t);    // k Q_t

struct DualityReport {
  bool ok = true;
  bool ph_ok = true, hph_ok = true, rank_ok = true;
  std::size_t rank = 0;
  std::string message;
};
DualityReport duality_check(const Triangulation& T);

struct FlipData {
  std::string a, astar, b, c, d, e;
  int t1 = -1, t2 = -1, i1 = -1, i2 = -1;
  enum class Coincidence { AllDistinct, BEqualsD, CEqualsE } coincidence = Coincidence::AllDistinct;
};
const char* coincidence_name(FlipData::Coincidence c);
std::string flipped_label(const std::string& a);

// New triangles t1 = (c, d, a*) and t2 = (e, b, a*).
std::pair<Triangulation, FlipData> flip(const Triangulation& T, const std::string& a);

// Label map A -> B making the triangulations equal up to triangle order and rotation.
std::optional<std::map<std::string, std::string>> find_relabeling(const Triangulation& A, const Triangulation& B,
                                                                 const std::map<std::string, std::string>& fixed = {});
bool same_triangulation(const Triangulation& A, const Triangulation& B);

namespace library {
Triangulation polygon(int n);
Triangulation annulus(int outer_marks = 1, int inner_marks = 1);
Triangulation punctured_torus();
Triangulation thrice_punctured_sphere();
// Names: polygon-N, annulus, annulus-M-N, punctured-torus, thrice-punctured-sphere.
Triangulation by_name(const std::string& name);
std::vector<std::string> marked_names();
}  // namespace library

}  // namespace qtrace
