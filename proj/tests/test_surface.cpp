#include <doctest.h>

#include <functional>
#include <set>

#include "qtrace/surface.hpp"

using namespace qtrace;

namespace {

// Oracle: Q from the cyclic label order of each triangle, +1 for (x, next x).
IntMatrix face_matrix_from_labels(const Triangulation& T) {
  std::size_t n = T.num_edges();
  IntMatrix Q(n, n);
  for (const auto& tri : T.all_triangle_labels()) {
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0]) continue;
    for (int i = 0; i < 3; ++i) {
      int a = T.edge_index(tri[i]), b = T.edge_index(tri[(i + 1) % 3]);
      Q(a, b) += 1;
      Q(b, a) -= 1;
    }
  }
  return Q;
}

std::set<int> endpoints(const Triangulation& T, int edge) {
  int s = T.sides_of_edge(edge)[0];
  int t = s / 3, i = s % 3;
  return {T.corner_vertex(3 * t + i), T.corner_vertex(3 * t + (i + 1) % 3)};
}

SurfaceError::Kind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const SurfaceError& e) {
    return e.kind();
  }
  FAIL("no SurfaceError thrown");
  return SurfaceError::Kind::Input;
}

}  // namespace

TEST_SUITE("surface") {
  TEST_CASE("library counts") {
    for (int n = 3; n <= 8; ++n) {
      auto T = library::polygon(n);
      CHECK(T.num_triangles() == static_cast<std::size_t>(n - 2));
      CHECK(T.num_edges() == static_cast<std::size_t>(2 * n - 3));
      CHECK(T.inner_edges().size() == static_cast<std::size_t>(n - 3));
      auto topo = T.topology();
      CHECK(topo.genus == 0);
      CHECK(topo.boundary_marks == std::vector<int>{n});
    }
    auto A = library::annulus();
    CHECK(A.num_triangles() == 2);
    CHECK(A.inner_labels() == std::vector<std::string>{"e1", "e2"});
    auto topo = library::annulus(1, 2).topology();
    std::multiset<int> marks(topo.boundary_marks.begin(), topo.boundary_marks.end());
    CHECK(marks == std::multiset<int>{1, 2});
    CHECK(topo.genus == 0);
    auto torus = library::punctured_torus().topology();
    CHECK(torus.genus == 1);
    CHECK(torus.interior_points == 1);
    CHECK(library::thrice_punctured_sphere().topology().interior_points == 3);
  }

  TEST_CASE("face matrix of one triangle") {
    auto T = library::polygon(3);
    IntMatrix Q = face_matrix(T);
    auto tri = T.triangle_labels(0);
    int a = T.edge_index(tri[0]), b = T.edge_index(tri[1]), c = T.edge_index(tri[2]);
    CHECK(Q(a, b) == 1);
    CHECK(Q(b, c) == 1);
    CHECK(Q(c, a) == 1);
    CHECK(Q(b, a) == -1);
    CHECK(Q(a, a) == 0);
  }

  TEST_CASE("face matrix is the sum over triangles") {
    for (const auto& name : library::marked_names()) {
      CAPTURE(name);
      auto T = library::by_name(name);
      IntMatrix sum(T.num_edges(), T.num_edges());
      for (std::size_t t = 0; t < T.num_triangles(); ++t) sum = sum + triangle_face_matrix(T, static_cast<int>(t));
      CHECK(face_matrix(T) == sum);
      CHECK(face_matrix(T) == face_matrix_from_labels(T));
      CHECK(face_matrix(T).is_antisymmetric());
      CHECK(shear_matrix(T).rows() == T.inner_edges().size());
    }
    auto T = library::punctured_torus();
    CHECK(face_matrix(T) == face_matrix_from_labels(T));
  }

  TEST_CASE("row action") {
    auto T = library::polygon(5);
    Exp k(T.num_edges(), 0);
    k[T.edge_index("e2")] = 1;
    Exp total(T.num_edges(), 0);
    for (std::size_t t = 0; t < T.num_triangles(); ++t) total = total + row_action(T, k, static_cast<int>(t));
    CHECK(total == face_matrix(T).row(T.edge_index("e2")));
  }

  TEST_CASE("vertex matrix") {
    for (const auto& name : library::marked_names()) {
      CAPTURE(name);
      auto T = library::by_name(name);
      IntMatrix P = vertex_matrix(T);
      CHECK(P.is_antisymmetric());
      for (std::size_t a = 0; a < T.num_edges(); ++a)
        for (std::size_t b = 0; b < T.num_edges(); ++b) {
          auto ea = endpoints(T, static_cast<int>(a)), eb = endpoints(T, static_cast<int>(b));
          bool share = false;
          for (int v : ea) share = share || eb.count(v);
          if (!share) CHECK(P(a, b) == 0);
        }
    }
  }

  TEST_CASE("duality on marked surfaces") {
    for (const auto& name : library::marked_names()) {
      CAPTURE(name);
      auto T = library::by_name(name);
      auto r = duality_check(T);
      CHECK(r.ok);
      CHECK(r.rank == T.inner_edges().size());
      IntMatrix H = shear_matrix(T);
      IntMatrix HP = H * vertex_matrix(T);
      for (std::size_t i = 0; i < H.rows(); ++i)
        for (std::size_t j = 0; j < T.num_edges(); ++j)
          CHECK(HP(i, j) == (static_cast<int>(j) == T.inner_edges()[i] ? 4 : 0));
    }
  }

  TEST_CASE("flip of the square") {
    auto T = library::polygon(4);
    REQUIRE(T.inner_labels().size() == 1);
    std::string a = T.inner_labels()[0];
    auto [T2, f] = flip(T, a);
    CHECK(f.astar == a + "*");
    CHECK(f.coincidence == FlipData::Coincidence::AllDistinct);
    std::set<std::string> quad{f.b, f.c, f.d, f.e};
    CHECK(quad.size() == 4);
    CHECK_FALSE(same_triangulation(T, T2));
    CHECK(find_relabeling(T, T2).has_value());
    auto back = flip(T2, f.astar).first;
    CHECK(same_triangulation(T, back));
    CHECK(flipped_label("x*") == "x");
  }

  TEST_CASE("flip is an involution on every inner edge") {
    for (const auto& name : library::marked_names()) {
      auto T = library::by_name(name);
      for (const auto& a : T.inner_labels()) {
        CAPTURE(name);
        CAPTURE(a);
        auto [T2, f] = flip(T, a);
        validate(T2, true);
        CHECK(same_triangulation(T, flip(T2, f.astar).first));
      }
    }
  }

  TEST_CASE("flip changes the face matrix only around the quadrilateral") {
    auto T = library::polygon(6);
    for (const auto& a : T.inner_labels()) {
      auto [T2, f] = flip(T, a);
      std::set<std::string> quad{f.a, f.astar, f.b, f.c, f.d, f.e};
      IntMatrix Q = face_matrix(T), Q2 = face_matrix(T2);
      for (const auto& x : T.labels())
        for (const auto& y : T.labels()) {
          if (quad.count(x) && quad.count(y)) continue;
          if (x == a || y == a) continue;
          CHECK(Q(T.edge_index(x), T.edge_index(y)) == Q2(T2.edge_index(x), T2.edge_index(y)));
        }
    }
  }

  TEST_CASE("pentagon relation") {
    auto T = library::polygon(5);
    REQUIRE(T.inner_labels() == std::vector<std::string>{"e2", "e4"});
    Triangulation cur = T;
    for (const char* e : {"e2", "e4", "e2*", "e4*", "e2"}) cur = flip(cur, e).first;
    CHECK_FALSE(same_triangulation(T, cur));
    std::map<std::string, std::string> fixed;
    for (int b : T.boundary_edges()) fixed[T.label(b)] = T.label(b);
    auto rel = find_relabeling(T, cur, fixed);
    REQUIRE(rel.has_value());
    CHECK(rel->at("e2") != "e2");
  }

  TEST_CASE("excluded and malformed surfaces") {
    Topology mono;
    mono.boundary_marks = {1};
    CHECK(error_kind([&] { check_triangulable(mono); }) == SurfaceError::Kind::Monogon);
    Topology di;
    di.boundary_marks = {2};
    CHECK(error_kind([&] { check_triangulable(di); }) == SurfaceError::Kind::Digon);
    Topology sphere;
    sphere.interior_points = 2;
    CHECK(error_kind([&] { check_triangulable(sphere); }) == SurfaceError::Kind::SmallSphere);
    Topology unmarked;
    unmarked.boundary_marks = {3, 0};
    CHECK(error_kind([&] { check_triangulable(unmarked); }) == SurfaceError::Kind::Input);

    CHECK_THROWS_AS(Triangulation::from_labels({{"a", "a", "a"}}), SurfaceError);
    CHECK_THROWS_AS(Triangulation::from_gluing(1, {{0, 5}}), SurfaceError);
    CHECK_THROWS_AS(Triangulation::from_gluing(2, {{0, 3}, {0, 4}}), SurfaceError);
    auto disconnected = Triangulation::from_labels({{"a", "b", "c"}, {"d", "e", "f"}});
    CHECK(error_kind([&] { validate(disconnected); }) == SurfaceError::Kind::Disconnected);

    auto T = library::polygon(4);
    CHECK(error_kind([&] { flip(T, T.label(T.boundary_edges()[0])); }) == SurfaceError::Kind::BadEdge);
    CHECK_THROWS(T.edge_index("nope"));
  }

  TEST_CASE("generalized triangulations") {
    auto T = library::thrice_punctured_sphere();
    CHECK(T.generalized());
    CHECK(error_kind([&] { vertex_matrix(T); }) == SurfaceError::Kind::Generalized);
    CHECK(error_kind([&] { validate(T, true); }) == SurfaceError::Kind::Generalized);
    CHECK_FALSE(library::polygon(5).generalized());

    // Once-punctured monogon: a single self-folded triangle.
    auto M = Triangulation::from_labels({{"a", "b", "b"}});
    validate(M);
    CHECK(M.self_folded(0));
    CHECK(M.interior_vertices().size() == 1);
    CHECK(triangle_face_matrix(M, 0).is_zero());
    CHECK(error_kind([&] { validate(M, true); }) == SurfaceError::Kind::SelfFolded);
  }
}
