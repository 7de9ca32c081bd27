#include <doctest.h>

#include "qtrace/coordinate_change.hpp"
#include "qtrace/shear.hpp"
#include "qtrace/suites.hpp"

using namespace qtrace;

namespace {

TorusElement mono(const SpecPtr& s, std::initializer_list<std::pair<const char*, long>> parts, const Scalar& c = 1) {
  Exp k(s->size(), 0);
  for (const auto& [l, p] : parts) k = k + s->unit(l, p);
  return TorusElement::monomial(s, k, c);
}

TorusElement exact(const ExprPtr& e) {
  auto v = expand(e);
  REQUIRE(v.has_value());
  return *v;
}

bool equal_up_to_rotation(const NormalCurve& a, const NormalCurve& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r)
    if (rotated(a, r) == b) return true;
  return false;
}

VerifyOptions quick() {
  VerifyOptions o;
  o.trials = 4;
  return o;
}

}  // namespace

TEST_SUITE("coordinate_change") {
  TEST_CASE("skein flip images") {
    auto T = library::polygon(4);
    auto m = phi_flip(T, "e2");
    REQUIRE(m.flip.has_value());
    SpecPtr X = m.target;
    CHECK(exact(m.images.at("e2*").first) ==
          mono(X, {{"e1", 2}, {"e4", 2}, {"e2", -2}}) + mono(X, {{"e0", 2}, {"e3", 2}, {"e2", -2}}));
    CHECK(m.images.at("e2*").second->kind() == SkewExpr::Kind::Inverse);
    CHECK(exact(m.images.at("e0").first) == mono(X, {{"e0", 2}}));
    CHECK(exact(m.images.at("e0").second) == mono(X, {{"e0", -2}}));
    CHECK(m.source->labels == flip(T, "e2").first.labels());
  }

  TEST_CASE("shear flip images in the distinct case") {
    auto T = library::polygon(5);
    auto m = theta_flip(T, "e2");
    SpecPtr Y = m.target;
    // e4 is the only other inner edge; it sits on side e of the quadrilateral.
    CHECK(exact(m.images.at("e2*").first) == mono(Y, {{"e2", -2}}));
    CHECK(exact(m.images.at("e2*").second) == mono(Y, {{"e2", 2}}));
    REQUIRE(m.flip->e == "e4");
    CHECK(exact(m.images.at("e4").second) == mono(Y, {{"e4", -2}}) + mono(Y, {{"e4", -2}, {"e2", -2}}));
    CHECK(m.images.at("e4").first->kind() == SkewExpr::Kind::Inverse);
  }

  TEST_CASE("shear flip images with coincident sides") {
    auto T = library::annulus();
    auto m = theta_flip(T, "e1");
    REQUIRE(m.flip->coincidence == FlipData::Coincidence::BEqualsD);
    SpecPtr Y = m.target;
    Scalar mid = coincident_middle_coefficient();
    CHECK(mid.str() == "1*q^(-16/8) + 1*q^(16/8)");
    CHECK(exact(m.images.at("e2").first) ==
          mono(Y, {{"e2", 2}}) + mono(Y, {{"e1", 2}, {"e2", 2}}, mid) + mono(Y, {{"e1", 4}, {"e2", 2}}));
    auto m2 = theta_flip(T, "e2");
    REQUIRE(m2.flip->coincidence == FlipData::Coincidence::CEqualsE);
    CHECK(exact(m2.images.at("e1").second) ==
          mono(Y, {{"e1", -2}}) + mono(Y, {{"e2", -2}, {"e1", -2}}, mid) + mono(Y, {{"e2", -4}, {"e1", -2}}));
    auto custom = theta_flip(T, "e1", Scalar(2));
    CHECK(exact(custom.images.at("e2").first).terms().at(Exp{2, 2}) == Scalar(2));
  }

  TEST_CASE("apply and compose") {
    auto T = library::polygon(5);
    auto m = theta_flip(T, "e2");
    auto T2 = flip(T, "e2").first;
    SpecPtr Y2 = shear_spec(T2);
    CHECK(exact(apply_map(m, TorusElement::one(Y2))) == TorusElement::one(m.target));
    CHECK_THROWS(apply_map(m, mono(Y2, {{"e4", 1}})));
    auto id = identity_map(m.target);
    auto c = compose(id, m);
    for (const auto& [l, img] : m.images)
      CHECK(check_identity(l, c.images.at(l).first, img.first, quick()).verdict == Verdict::Pass);
  }

  TEST_CASE("empty flip sequence") {
    auto T = library::polygon(6);
    auto seq = compose_flips(T, {}, FlipSide::Shear);
    CHECK(seq.triangulations.size() == 1);
    CHECK(seq.flips.empty());
    SpecPtr Y = seq.composite.target;
    for (const auto& l : Y->labels) CHECK(exact(seq.composite.images.at(l).first) == TorusElement::monomial(Y, Y->unit(l, 2)));
  }

  TEST_CASE("flip back on the square") {
    auto T = library::polygon(4);
    for (FlipSide side : {FlipSide::Shear, FlipSide::Skein}) {
      auto seq = compose_flips(T, {"e2", "e2*"}, side);
      CHECK(same_triangulation(seq.triangulations.front(), seq.triangulations.back()));
      SpecPtr S = seq.composite.target;
      for (const auto& l : S->labels) {
        CAPTURE(l);
        auto gen = SkewExpr::leaf(TorusElement::monomial(S, S->unit(l, 2)));
        auto chk = check_identity(l, seq.composite.images.at(l).first, gen, quick());
        CHECK(chk.verdict == Verdict::Pass);
      }
    }
  }

  TEST_CASE("curve transport") {
    for (const auto& cc : curve_catalog())
      for (const auto& a : cc.T.inner_labels()) {
        CAPTURE(cc.name);
        CAPTURE(a);
        auto [T2, f] = flip(cc.T, a);
        auto c2 = transport_curve(cc.curve, f, true);
        validate_curve(T2, c2);
        auto back = transport_curve(c2, f, false);
        validate_curve(cc.T, back);
        CHECK(equal_up_to_rotation(back, cc.curve));
        auto m = edge_multiplicities(cc.T, cc.curve), m2 = edge_multiplicities(T2, c2);
        for (const auto& l : cc.T.labels()) {
          if (l == a || l == f.b || l == f.c || l == f.d || l == f.e) continue;
          int e = cc.T.edge_index(l), e2 = T2.edge_index(l);
          CHECK((m.count(e) ? m[e] : 0) == (m2.count(e2) ? m2[e2] : 0));
        }
      }
  }

  TEST_CASE("knot monomial transfer") {
    auto cat = curve_catalog();
    const auto& core = cat[1];
    REQUIRE(core.name == "annulus-1-2/core");
    auto absent = knot_monomial_transfer(core.T, core.curve, "e4");
    CHECK(absent.pattern == CrossingPattern::Absent);
    CHECK(absent.polynomial);
    CHECK(absent.exact_equal);
    CHECK(exact(absent.theta_image) == TorusElement::monomial(shear_spec(core.T), absent.k));

    auto rl = knot_monomial_transfer(core.T, core.curve, "e1");
    CHECK(rl.pattern == CrossingPattern::RightLeft);
    CHECK(exact(rl.theta_image).size() == 2);
    CHECK(check_identity("right-left", rl.lhs, rl.rhs, quick()).verdict == Verdict::Pass);

    auto lr = knot_monomial_transfer(core.T, core.curve, "e2");
    CHECK(lr.pattern == CrossingPattern::LeftRight);
    CHECK(lr.theta_image->kind() == SkewExpr::Kind::Inverse);
    CHECK(check_identity("left-right", lr.lhs, lr.rhs, quick()).verdict == Verdict::Pass);
  }

  TEST_CASE("theta of a trace matches the trace") {
    auto cat = curve_catalog();
    const auto& core = cat.front();
    auto here = SkewExpr::leaf(trace_simple(core.T, core.curve).shear);
    for (const auto& a : core.T.inner_labels()) {
      auto chk = check_identity("naturality " + a, theta_of_trace(core.T, core.curve, a), here, quick());
      CHECK(chk.verdict == Verdict::Pass);
    }
  }
}
