#include <doctest.h>

#include "helpers.hpp"
#include "qtrace/shear.hpp"
#include "qtrace/suites.hpp"

using namespace qtrace;

namespace {

// Oracle: parity of the inner-label sum over every triangle, read from the label triples.
bool balanced_by_labels(const Triangulation& T, const Exp& k) {
  auto inner = T.inner_labels();
  for (const auto& tri : T.all_triangle_labels()) {
    long s = 0;
    for (const auto& l : tri)
      for (std::size_t i = 0; i < inner.size(); ++i)
        if (inner[i] == l) s += k[i];
    if (s % 2 != 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("shear") {
  TEST_CASE("balanced exponents") {
    auto P = library::polygon(5);
    CHECK(is_balanced(P, {2, 4}));
    CHECK_FALSE(is_balanced(P, {1, 1}));
    CHECK_FALSE(is_balanced(P, {0, 1}));
    auto A = library::annulus();
    CHECK(is_balanced(A, {1, 1}));
    auto split = balanced_decompose(A, {1, 1});
    CHECK(split.parity == Exp{1, 1});
    CHECK(split.even == Exp{0, 0});
    split = balanced_decompose(A, {3, -1});
    CHECK(split.parity == Exp{1, 1});
    CHECK(split.even == Exp{2, -2});
    CHECK_THROWS(balanced_decompose(P, {1, 0}));
    CHECK_THROWS(is_balanced(P, {1, 0, 0}));
  }

  TEST_CASE("balanced exactly when the skein image is even") {
    std::mt19937 rng(21);
    std::vector<std::string> names = library::marked_names();
    for (int i = 0; i < 1000; ++i) {
      auto T = library::by_name(names[i % names.size()]);
      Exp k = testutil::random_exp(rng, T.inner_edges().size(), -4, 4);
      auto r = even_image_check(T, k);
      CHECK(r.balanced == balanced_by_labels(T, k));
      CHECK(r.consistent());
      CHECK(r.image == row_times(k, shear_matrix(T)));
    }
  }

  TEST_CASE("psi of a generator") {
    auto T = library::polygon(5);
    auto [T2, f] = flip(T, "e2");
    (void)T2;
    auto Y = shear_spec(T);
    auto img = shear_to_skein(T, TorusElement::monomial(Y, Y->unit("e2")));
    auto X = skein_spec(T);
    Exp m(T.num_edges(), 0);
    m[T.edge_index(f.b)] += 1;
    m[T.edge_index(f.d)] += 1;
    m[T.edge_index(f.c)] -= 1;
    m[T.edge_index(f.e)] -= 1;
    CHECK(img == TorusElement::monomial(X, m));
  }

  TEST_CASE("psi is a reflection-compatible homomorphism") {
    std::mt19937 rng(22);
    for (const auto& name : library::marked_names()) {
      CAPTURE(name);
      auto T = library::by_name(name);
      auto Y = shear_spec(T);
      for (int i = 0; i < 10; ++i) {
        auto a = testutil::random_element(rng, Y), b = testutil::random_element(rng, Y);
        CHECK(shear_to_skein(T, a * b) == shear_to_skein(T, a) * shear_to_skein(T, b));
        CHECK(shear_to_skein(T, a.reflect()) == shear_to_skein(T, a).reflect());
      }
    }
  }

  TEST_CASE("skein preimage") {
    std::mt19937 rng(23);
    for (const auto& name : library::marked_names()) {
      auto T = library::by_name(name);
      for (int i = 0; i < 20; ++i) {
        Exp k = testutil::random_exp(rng, T.inner_edges().size());
        auto back = skein_preimage(T, row_times(k, shear_matrix(T)));
        REQUIRE(back.has_value());
        CHECK(*back == k);
      }
      Exp m(T.num_edges(), 0);
      m[T.boundary_edges()[0]] = 1;
      CHECK_FALSE(skein_preimage(T, m).has_value());
    }
  }

  TEST_CASE("torus data") {
    auto T = library::annulus();
    auto Y = shear_spec(T);
    CHECK(Y->u8 == -8);
    CHECK(Y->labels == T.inner_labels());
    auto X = skein_spec(T);
    CHECK(X->u8 == 2);
    CHECK(X->labels == T.labels());
    CHECK_THROWS_AS(skein_spec(library::punctured_torus()), SurfaceError);
  }
}
