#include <doctest.h>

#include "helpers.hpp"
#include "qtrace/json_io.hpp"
#include "qtrace/shear.hpp"
#include "qtrace/suites.hpp"

using namespace qtrace;

namespace {

std::string error_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.path();
  }
  FAIL("no InputError thrown");
  return "";
}

json square() {
  return json::parse(R"({"triangles":[{"sides":[0,1,2]},{"sides":[3,4,5]}],"gluing":[[2,3]]})");
}

}  // namespace

TEST_SUITE("json_io") {
  TEST_CASE("triangulation round trip") {
    for (const auto& name : {"polygon-5", "annulus-1-2", "punctured-torus", "thrice-punctured-sphere"}) {
      CAPTURE(name);
      auto T = library::by_name(name);
      auto j = triangulation_to_json(T);
      auto back = triangulation_from_json(j);
      CHECK(same_triangulation(T, back));
      CHECK(triangulation_to_json(back) == j);
      CHECK(j.contains("interior_points") == T.generalized());
    }
  }

  TEST_CASE("minimal triangulation input") {
    auto T = triangulation_from_json(square());
    CHECK(T.num_triangles() == 2);
    CHECK(T.inner_edges().size() == 1);
    CHECK(same_triangulation(T, library::polygon(4)));
  }

  TEST_CASE("triangulation errors carry a pointer") {
    auto j = square();
    j["extra"] = 1;
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/extra");
    j = square();
    j["triangles"][1]["sides"] = {3, 4};
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/triangles/1/sides");
    j = square();
    j["gluing"][0] = {2, 2};
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/gluing/0/1");
    j = square();
    j["gluing"][0] = {2, 42};
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/gluing/0/1");
    j = square();
    j["gluing"].push_back({3, 4});
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/gluing/1/0");
    j = square();
    j["boundary_marks"] = {3};
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/boundary_marks");
    j = square();
    j.erase("gluing");
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/gluing");
    CHECK(error_path([&] { triangulation_from_json(json::parse("[]")); }) == "/");
    // Topological failures are reported against the whole document.
    j = json::parse(R"({"triangles":[{"sides":[0,1,2]},{"sides":[3,4,5]}],"gluing":[]})");
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/");
  }

  TEST_CASE("interior points must be declared") {
    auto j = triangulation_to_json(library::punctured_torus());
    REQUIRE(j.contains("interior_points"));
    j.erase("interior_points");
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/interior_points");
    j["interior_points"] = 2;
    CHECK(error_path([&] { triangulation_from_json(j); }) == "/interior_points");
  }

  TEST_CASE("curves") {
    for (const auto& cc : curve_catalog()) {
      auto j = curve_to_json(cc.curve);
      CHECK(curve_from_json(j) == cc.curve);
    }
    CHECK(error_path([&] { curve_from_json(json::parse(R"({"steps":[{"tri":0,"in":1}]})")); }) == "/steps/0/out");
    CHECK(error_path([&] { curve_from_json(json::parse(R"({"steps":[{"tri":0,"in":1,"out":5}]})")); }) ==
          "/steps/0/out");
  }

  TEST_CASE("elements") {
    auto Y = shear_spec(library::annulus());
    auto e = element_from_json(json::parse(R"({"terms":[{"exp":{"e1":1,"e2":-1},"coef":3},
                                                       {"exp":{},"coef":"-12345678901234567890"},
                                                       {"exp":{"e2":2},"coef":[[4,"1"],[-4,"2"]]}]})"),
                               Y);
    TorusElement want(Y);
    want.add_term({1, -1}, 3);
    want.add_term({0, 0}, Scalar::monomial(0, mpz_class("-12345678901234567890")));
    want.add_term({0, 2}, Scalar::monomial(4) + Scalar::monomial(-4, 2));
    CHECK(e == want);
    CHECK(element_from_json(element_to_json(e), Y) == e);
    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
      auto a = testutil::random_element(rng, Y);
      CHECK(element_from_json(element_to_json(a), Y) == a);
    }
    CHECK(error_path([&] { element_from_json(json::parse(R"({"terms":[{"exp":{"zz":1},"coef":1}]})"), Y); }) ==
          "/terms/0/exp/zz");
    CHECK(error_path([&] { element_from_json(json::parse(R"({"terms":[{"exp":{},"coef":"x"}]})"), Y); }) ==
          "/terms/0/coef");
    auto other = element_to_json(TorusElement::one(shear_spec(library::polygon(5))));
    CHECK(error_path([&] { element_from_json(other, Y); }) == "/generators");
  }

  TEST_CASE("reports and matrices") {
    VerifyReport r;
    r.verdict = Verdict::Pass;
    r.max_dev = 1.5e-12;
    r.seed = 7;
    r.trials = 3;
    r.orders.push_back({5, 25, 1.5e-12, true, ""});
    r.orders.push_back({7, 49, 0, false, "singular operator at order 7"});
    auto j = report_to_json(r);
    CHECK(j["verdict"] == "PASS");
    CHECK(j["max_deviation"] == "1.50e-12");
    CHECK(j["orders"].size() == 2);
    CHECK_FALSE(j["orders"][0].contains("note"));
    CHECK(j["orders"][1]["note"] == "singular operator at order 7");
    CHECK(matrix_to_json(IntMatrix::from_rows({{1, -2}, {0, 3}}, 2)).dump() == "[[1,-2],[0,3]]");
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_json_text("{", "inline"), InputError);
    CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), InputError);
  }
}
