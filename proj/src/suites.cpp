#include "qtrace/suites.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "qtrace/puncture.hpp"
#include "qtrace/shear.hpp"
#include "qtrace/trace.hpp"

namespace qtrace {

namespace {

ExprPtr generator(const SpecPtr& spec, const std::string& l, long e) {
  return SkewExpr::leaf(TorusElement::monomial(spec, spec->unit(l, e)));
}

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

// One line per group of generator checks: worst verdict, largest deviation.
Check merge(const std::string& name, const std::vector<Check>& parts) {
  Check m;
  m.name = name;
  m.verdict = Verdict::Pass;
  m.exact = true;
  std::size_t numeric = 0;
  for (const auto& p : parts) {
    m.verdict = worst(m.verdict, p.verdict);
    m.exact = m.exact && p.exact;
    if (!p.report) continue;
    ++numeric;
    if (!m.report || p.report->max_dev > m.report->max_dev || p.verdict != Verdict::Pass) m.report = p.report;
  }
  m.detail = std::to_string(parts.size()) + " identities, " + std::to_string(numeric) + " by representation";
  for (const auto& p : parts)
    if (p.verdict != Verdict::Pass) m.detail += "; " + p.name + " " + verdict_name(p.verdict);
  return m;
}

std::map<std::string, int> unit_counts(const std::vector<std::string>& labels) {
  std::map<std::string, int> m;
  for (const auto& l : labels) m[l] = 1;
  return m;
}

NormalCurve single_component(const Triangulation& T, const std::map<std::string, int>& counts) {
  auto comps = curves_from_coordinates(T, counts);
  if (comps.size() != 1) throw std::logic_error("catalog curve splits into several components");
  return comps.front();
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// Normal coordinates of the closed curves used on the generalized library surfaces.
const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& punctured_coordinates() {
  static const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> table{
      {"punctured-torus", {{"e0", "e1"}, {"e1", "e2"}, {"e0", "e2"}}},
      {"thrice-punctured-sphere", {{"e0", "e1"}, {"e1", "e2"}, {"e0", "e2"}}},
  };
  return table;
}

}  // namespace

Triangulation library_surface(const std::string& name) {
  if (name.rfind("lift:", 0) == 0) return lift(library::by_name(name.substr(5))).target;
  return library::by_name(name);
}

std::vector<std::string> duality_surfaces() {
  auto v = library::marked_names();
  v.push_back("lift:punctured-torus");
  v.push_back("lift:thrice-punctured-sphere");
  return v;
}

std::vector<std::string> flip_surfaces() { return duality_surfaces(); }

std::vector<CatalogCurve> punctured_catalog() {
  std::vector<CatalogCurve> out;
  for (const auto& [surf, list] : punctured_coordinates()) {
    Triangulation T = library::by_name(surf);
    for (const auto& labels : list)
      out.push_back({surf + "/" + join(labels, "+"), surf, T, single_component(T, unit_counts(labels))});
  }
  return out;
}

std::vector<CatalogCurve> curve_catalog() {
  std::vector<CatalogCurve> out;
  for (const char* name : {"annulus", "annulus-1-2", "annulus-2-2"}) {
    Triangulation T = library::by_name(name);
    out.push_back({std::string(name) + "/core", name, T, single_component(T, unit_counts(T.inner_labels()))});
  }
  for (const auto& pc : punctured_catalog()) {
    LiftData L = lift(pc.T);
    out.push_back({"lift:" + pc.name, "lift:" + pc.surface, L.target, lift_curve(L, pc.curve)});
  }
  return out;
}

Verdict SuiteReport::verdict() const {
  Verdict v = Verdict::Pass;
  for (const auto& c : checks) v = worst(v, c.verdict);
  return v;
}

std::size_t SuiteReport::count(Verdict v) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.verdict == v; }));
}

Check check_identity(const std::string& name, const ExprPtr& lhs, const ExprPtr& rhs, const VerifyOptions& opts,
                     bool force_numeric) {
  Check c;
  c.name = name;
  if (!force_numeric) {
    auto l = expand(lhs), r = expand(rhs);
    if (l && r) {
      c.exact = true;
      c.verdict = *l == *r ? Verdict::Pass : Verdict::Fail;
      return c;
    }
  }
  c.report = verify_identity(lhs, rhs, opts);
  c.verdict = c.report->verdict;
  return c;
}

SuiteReport suite_duality() {
  SuiteReport s{"duality", {}};
  for (const auto& name : duality_surfaces()) {
    Triangulation T = library_surface(name);
    DualityReport d = duality_check(T);
    Check c;
    c.name = name;
    c.exact = true;
    c.verdict = d.ok ? Verdict::Pass : Verdict::Fail;
    c.detail = "rank " + std::to_string(d.rank) + " of " + std::to_string(T.inner_edges().size());
    if (!d.ok) c.detail += "; " + d.message;
    s.checks.push_back(c);
    if (name.rfind("lift:", 0) == 0) {
      BarMatrices b = bar_matrices(lift(library::by_name(name.substr(5))));
      Check cb;
      cb.name = name.substr(5) + " contracted";
      cb.exact = true;
      cb.verdict = b.ok() ? Verdict::Pass : Verdict::Fail;
      cb.detail = std::string("Qbar ") + (b.qbar_ok ? "ok" : "bad") + ", HPH " + (b.hph_ok ? "ok" : "bad") + ", rank " +
                  (b.rank_ok ? "ok" : "bad");
      s.checks.push_back(cb);
    }
  }
  return s;
}

namespace {

std::vector<Check> flipback_checks(const Triangulation& T, const std::string& a, FlipSide side,
                                   const GeneratorImageMap& first, const VerifyOptions& opts) {
  auto [T2, f] = flip(T, a);
  GeneratorImageMap second = side == FlipSide::Shear ? theta_flip(T2, f.astar) : phi_flip(T2, f.astar);
  GeneratorImageMap comp = compose(first, second);
  SpecPtr spec = first.target;
  std::vector<Check> parts;
  for (const auto& [l, img] : comp.images) {
    if (spec->index(l) < 0) throw std::logic_error("flip-back lost generator " + l);
    parts.push_back(check_identity(l, img.first, generator(spec, l, 2), opts));
    parts.push_back(check_identity(l + "^-1", img.second, generator(spec, l, -2), opts));
  }
  return parts;
}

}  // namespace

SuiteReport suite_flipback(const VerifyOptions& opts) {
  SuiteReport s{"flipback", {}};
  for (const auto& name : flip_surfaces()) {
    Triangulation T = library_surface(name);
    for (const auto& a : T.inner_labels()) {
      s.checks.push_back(
          merge("theta " + name + " " + a, flipback_checks(T, a, FlipSide::Shear, theta_flip(T, a), opts)));
      s.checks.push_back(merge("phi " + name + " " + a, flipback_checks(T, a, FlipSide::Skein, phi_flip(T, a), opts)));
    }
  }
  return s;
}

SuiteReport suite_pentagon(const VerifyOptions& opts) {
  SuiteReport s{"pentagon", {}};
  Triangulation T0 = library::polygon(5);
  std::vector<std::string> seq{"e2", "e4", "e2*", "e4*", "e2"};
  for (FlipSide side : {FlipSide::Shear, FlipSide::Skein}) {
    FlipSequence fs = compose_flips(T0, seq, side);
    const Triangulation& T5 = fs.triangulations.back();
    std::map<std::string, std::string> fixed;
    for (int e : T0.boundary_edges()) fixed[T0.label(e)] = T0.label(e);
    auto sigma = find_relabeling(T0, T5, fixed);
    if (!sigma) throw std::logic_error("pentagon sequence does not return to the initial triangulation");
    SpecPtr spec = fs.composite.target;
    const char* tag = side == FlipSide::Shear ? "theta " : "phi ";
    for (const auto& w : spec->labels) {
      const auto& img = fs.composite.images.at(sigma->at(w));
      std::string nm = std::string(tag) + sigma->at(w) + " -> " + w;
      s.checks.push_back(check_identity(nm, img.first, generator(spec, w, 2), opts));
      s.checks.push_back(check_identity(nm + " inverse", img.second, generator(spec, w, -2), opts));
    }
  }
  return s;
}

SuiteReport suite_naturality(const VerifyOptions& opts) {
  SuiteReport s{"naturality", {}};
  for (const auto& cc : curve_catalog()) {
    ExprPtr here = SkewExpr::leaf(trace_simple(cc.T, cc.curve).shear);
    for (const auto& a : cc.T.inner_labels()) {
      auto [T2, f] = flip(cc.T, a);
      NormalCurve c2 = transport_curve(cc.curve, f, true);
      if (classify(T2, c2) != CurveClass::Simple) continue;
      s.checks.push_back(check_identity(cc.name + " flip " + a, theta_of_trace(cc.T, cc.curve, a), here, opts));
    }
  }
  return s;
}

SuiteReport suite_dia9(const VerifyOptions& opts) {
  SuiteReport s{"dia9", {}};
  for (const auto& name : flip_surfaces()) {
    Triangulation T = library_surface(name);
    SpecPtr X = skein_spec(T);
    auto psi = [&](const TorusElement& el) { return SkewExpr::leaf(shear_to_skein(T, el)); };
    for (const auto& a : T.inner_labels()) {
      auto [T2, f] = flip(T, a);
      GeneratorImageMap th = theta_flip(T, a), ph = phi_flip(T, a);
      SpecPtr Y2 = shear_spec(T2);
      std::vector<Check> parts;
      for (const auto& v : T2.inner_labels())
        for (long e : {2L, -2L}) {
          const auto& img = th.images.at(v);
          ExprPtr lhs = map_leaves(e > 0 ? img.first : img.second, psi, X);
          ExprPtr rhs = apply_map(ph, shear_to_skein(T2, TorusElement::monomial(Y2, Y2->unit(v, e))));
          parts.push_back(check_identity(e > 0 ? v : v + "^-1", lhs, rhs, opts));
        }
      s.checks.push_back(merge(name + " " + a, parts));
    }
  }
  return s;
}

SuiteReport suite_transfer(const VerifyOptions& opts) {
  SuiteReport s{"transfer", {}};
  for (const auto& cc : curve_catalog()) {
    std::vector<std::pair<std::string, std::pair<Triangulation, NormalCurve>>> images{{cc.name, {cc.T, cc.curve}}};
    for (const auto& a : cc.T.inner_labels()) {
      auto [T2, f] = flip(cc.T, a);
      NormalCurve c2 = transport_curve(cc.curve, f, true);
      images.push_back({cc.name + " after " + a, {T2, c2}});
      if (classify(T2, c2) != CurveClass::Simple) continue;
      TransferRecord tr = knot_monomial_transfer(cc.T, cc.curve, a);
      Check c = check_identity(cc.name + " flip " + a, tr.lhs, tr.rhs, opts);
      c.detail = std::string("pattern ") + pattern_name(tr.pattern);
      s.checks.push_back(c);
    }
    for (const auto& [nm, tc] : images) {
      CurveClass k = classify(tc.first, tc.second);
      if (k == CurveClass::General) continue;
      KnotMonomialImage im = psi_image_of_knot_monomial(tc.first, tc.second);
      Check c;
      c.name = "psi image " + nm;
      c.exact = true;
      c.verdict = im.equal() ? Verdict::Pass : Verdict::Fail;
      c.detail = class_name(k);
      s.checks.push_back(c);
    }
  }
  return s;
}

SuiteReport suite_corrupted(const VerifyOptions& opts) {
  SuiteReport s{"corrupted", {}};
  Triangulation T = library::polygon(5);
  const std::string a = T.inner_labels().front();
  GeneratorImageMap th = theta_flip(T, a);
  const FlipData& f = *th.flip;
  std::string side;
  for (const auto& l : {f.b, f.c, f.d, f.e})
    if (side.empty() && th.images.count(l)) side = l;
  if (side.empty()) throw std::logic_error("no inner quadrilateral side to corrupt");
  auto& img = th.images.at(side);
  // b/d sides carry the polynomial on the generator, c/e sides on its inverse.
  bool on_generator = img.first->kind() == SkewExpr::Kind::Leaf;
  const TorusElement& el = (on_generator ? img.first : img.second)->element();
  TorusElement bad(el.spec());
  std::size_t i = 0;
  for (const auto& [k, coef] : el.terms()) bad.add_term(k, ++i == el.size() ? coef.shifted(1) : coef);
  auto leaf = SkewExpr::leaf(bad);
  img = on_generator ? std::make_pair(leaf, SkewExpr::inverse(leaf)) : std::make_pair(SkewExpr::inverse(leaf), leaf);
  s.checks.push_back(merge("theta polygon-5 " + a + " with " + side + " image scaled",
                           flipback_checks(T, a, FlipSide::Shear, th, opts)));
  return s;
}

std::vector<std::string> suite_names() { return {"duality", "flipback", "pentagon", "naturality", "dia9", "transfer"}; }

SuiteReport run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "duality") return suite_duality();
  if (name == "flipback") return suite_flipback(opts);
  if (name == "pentagon") return suite_pentagon(opts);
  if (name == "naturality") return suite_naturality(opts);
  if (name == "dia9") return suite_dia9(opts);
  if (name == "transfer") return suite_transfer(opts);
  if (name == "corrupted") return suite_corrupted(opts);
  throw std::invalid_argument("unknown suite " + name);
}

}  // namespace qtrace
