#include "qtrace/coordinate_change.hpp"

#include <set>
#include <stdexcept>

#include "qtrace/shear.hpp"

namespace qtrace {

namespace {

TorusElement gen_monomial(const SpecPtr& spec, std::initializer_list<std::pair<std::string, long>> parts) {
  Exp k(spec->size(), 0);
  for (const auto& [l, p] : parts) k = k + spec->unit(l, 2 * p);
  return TorusElement::monomial(spec, k);
}

}  // namespace

GeneratorImageMap identity_map(const SpecPtr& spec, long scale) {
  GeneratorImageMap m{spec, spec, scale, {}, std::nullopt};
  for (const auto& l : spec->labels)
    m.images[l] = {SkewExpr::leaf(TorusElement::monomial(spec, spec->unit(l, scale))),
                   SkewExpr::leaf(TorusElement::monomial(spec, spec->unit(l, -scale)))};
  return m;
}

GeneratorImageMap phi_flip(const Triangulation& T, const std::string& a) {
  auto [T2, f] = flip(T, a);
  SpecPtr X = skein_spec(T), X2 = skein_spec(T2);
  GeneratorImageMap m{X2, X, 2, {}, f};
  for (const auto& l : T2.labels()) {
    if (l == f.astar) {
      TorusElement el = gen_monomial(X, {{f.c, 1}, {f.e, 1}, {f.a, -1}}) + gen_monomial(X, {{f.b, 1}, {f.d, 1}, {f.a, -1}});
      auto leaf = SkewExpr::leaf(el);
      m.images[l] = {leaf, SkewExpr::inverse(leaf)};
    } else {
      m.images[l] = {SkewExpr::leaf(gen_monomial(X, {{l, 1}})), SkewExpr::leaf(gen_monomial(X, {{l, -1}}))};
    }
  }
  return m;
}

Scalar coincident_middle_coefficient() { return Scalar::monomial(16) + Scalar::monomial(-16); }

GeneratorImageMap theta_flip(const Triangulation& T, const std::string& a, const Scalar& middle) {
  auto [T2, f] = flip(T, a);
  SpecPtr Y = shear_spec(T), Y2 = shear_spec(T2);
  GeneratorImageMap m{Y2, Y, 2, {}, f};
  bool caseB = f.coincidence == FlipData::Coincidence::BEqualsD;
  bool caseC = f.coincidence == FlipData::Coincidence::CEqualsE;
  for (const auto& l : T2.inner_labels()) {
    if (l == f.astar) {
      m.images[l] = {SkewExpr::leaf(gen_monomial(Y, {{f.a, -1}})), SkewExpr::leaf(gen_monomial(Y, {{f.a, 1}}))};
    } else if (l == f.b || l == f.d) {
      TorusElement el = caseB ? gen_monomial(Y, {{f.b, 1}}) + gen_monomial(Y, {{f.a, 1}, {f.b, 1}}).scaled(middle) +
                                    gen_monomial(Y, {{f.a, 2}, {f.b, 1}})
                              : gen_monomial(Y, {{l, 1}}) + gen_monomial(Y, {{l, 1}, {f.a, 1}});
      auto leaf = SkewExpr::leaf(el);
      m.images[l] = {leaf, SkewExpr::inverse(leaf)};
    } else if (l == f.c || l == f.e) {
      // The polynomial image belongs to Y_v^-1.
      TorusElement el = caseC ? gen_monomial(Y, {{f.c, -1}}) + gen_monomial(Y, {{f.a, -1}, {f.c, -1}}).scaled(middle) +
                                    gen_monomial(Y, {{f.a, -2}, {f.c, -1}})
                              : gen_monomial(Y, {{l, -1}}) + gen_monomial(Y, {{l, -1}, {f.a, -1}});
      auto leaf = SkewExpr::leaf(el);
      m.images[l] = {SkewExpr::inverse(leaf), leaf};
    } else {
      m.images[l] = {SkewExpr::leaf(gen_monomial(Y, {{l, 1}})), SkewExpr::leaf(gen_monomial(Y, {{l, -1}}))};
    }
  }
  return m;
}

ExprPtr apply_map(const GeneratorImageMap& map, const TorusElement& el) {
  const TorusSpec& src = *map.source;
  if (el.spec()->labels != src.labels) throw std::invalid_argument("element is not over the map source");
  std::vector<std::pair<Scalar, ExprPtr>> items;
  for (const auto& [k, coef] : el.terms()) {
    std::vector<Exp> pieces;
    std::vector<ExprPtr> factors;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      if (k[i] % map.scale != 0)
        throw std::invalid_argument("exponent of " + src.labels[i] + " is not a multiple of the generator scale");
      long n = k[i] / map.scale;
      const auto& img = map.images.at(src.labels[i]);
      for (long r = 0; r < std::labs(n); ++r) {
        Exp p(src.size(), 0);
        p[i] = n > 0 ? map.scale : -map.scale;
        pieces.push_back(p);
        factors.push_back(n > 0 ? img.first : img.second);
      }
    }
    long pre = word_prefactor(src, pieces);
    items.emplace_back(coef.shifted(static_cast<int>(pre)), SkewExpr::product(std::move(factors), 1, map.target));
  }
  return SkewExpr::sum(std::move(items), map.target);
}

ExprPtr substitute(const GeneratorImageMap& map, const ExprPtr& e) {
  return map_leaves(e, [&](const TorusElement& el) { return apply_map(map, el); }, map.target);
}

GeneratorImageMap compose(const GeneratorImageMap& inner, const GeneratorImageMap& outer) {
  if (outer.target->labels != inner.source->labels) throw std::invalid_argument("maps do not compose");
  GeneratorImageMap r{outer.source, inner.target, outer.scale, {}, std::nullopt};
  for (const auto& [l, img] : outer.images) r.images[l] = {substitute(inner, img.first), substitute(inner, img.second)};
  return r;
}

FlipSequence compose_flips(const Triangulation& T, const std::vector<std::string>& edges, FlipSide side) {
  FlipSequence seq;
  seq.triangulations.push_back(T);
  std::vector<GeneratorImageMap> maps;
  for (const auto& a : edges) {
    const Triangulation& cur = seq.triangulations.back();
    maps.push_back(side == FlipSide::Shear ? theta_flip(cur, a) : phi_flip(cur, a));
    auto [next, f] = flip(cur, a);
    seq.flips.push_back(f);
    seq.triangulations.push_back(next);
  }
  if (maps.empty()) {
    seq.composite = identity_map(side == FlipSide::Shear ? shear_spec(T) : skein_spec(T));
    return seq;
  }
  GeneratorImageMap comp = maps.back();
  for (std::size_t i = maps.size() - 1; i-- > 0;) comp = compose(maps[i], comp);
  seq.composite = comp;
  return seq;
}

NormalCurve transport_curve(const NormalCurve& c, const FlipData& f, bool forward) {
  using Key = std::pair<int, int>;
  std::map<Key, char> roles;
  std::set<Key> diag_src;
  std::map<char, Key> dst;
  std::map<int, int> diag_dst;
  if (forward) {
    roles = {{{f.t1, (f.i1 + 1) % 3}, 'b'}, {{f.t1, (f.i1 + 2) % 3}, 'c'},
             {{f.t2, (f.i2 + 1) % 3}, 'd'}, {{f.t2, (f.i2 + 2) % 3}, 'e'}};
    diag_src = {{f.t1, f.i1}, {f.t2, f.i2}};
    dst = {{'c', {f.t1, 0}}, {'d', {f.t1, 1}}, {'e', {f.t2, 0}}, {'b', {f.t2, 1}}};
    diag_dst = {{f.t1, 2}, {f.t2, 2}};
  } else {
    roles = {{{f.t1, 0}, 'c'}, {{f.t1, 1}, 'd'}, {{f.t2, 0}, 'e'}, {{f.t2, 1}, 'b'}};
    diag_src = {{f.t1, 2}, {f.t2, 2}};
    dst = {{'b', {f.t1, (f.i1 + 1) % 3}}, {'c', {f.t1, (f.i1 + 2) % 3}},
           {'d', {f.t2, (f.i2 + 1) % 3}}, {'e', {f.t2, (f.i2 + 2) % 3}}};
    diag_dst = {{f.t1, f.i1}, {f.t2, f.i2}};
  }
  std::size_t n = c.size();
  auto in_quad = [&](int t) { return t == f.t1 || t == f.t2; };
  std::size_t start = n;
  for (std::size_t j = 0; j < n; ++j) {
    const Step& s = c.steps[j];
    if (!(in_quad(s.tri) && diag_src.count({s.tri, s.in}))) {
      start = j;
      break;
    }
  }
  if (start == n) throw CurveError("curve only crosses the flipped diagonal");
  NormalCurve st = rotated(c, start), out;
  for (std::size_t j = 0; j < n; ++j) {
    Step s = st.steps[j];
    if (!in_quad(s.tri)) {
      out.steps.push_back(s);
      continue;
    }
    char X = roles.at({s.tri, s.in});
    while (diag_src.count({s.tri, s.out})) {
      ++j;
      if (j >= n) throw CurveError("curve transport ran past the end of the curve");
      s = st.steps[j];
    }
    char Y = roles.at({s.tri, s.out});
    auto [tx, sx] = dst.at(X);
    auto [ty, sy] = dst.at(Y);
    if (tx == ty) {
      out.steps.push_back({tx, sx, sy});
    } else {
      out.steps.push_back({tx, sx, diag_dst.at(tx)});
      out.steps.push_back({ty, diag_dst.at(ty), sy});
    }
  }
  return out;
}

TransferRecord knot_monomial_transfer(const Triangulation& T, const NormalCurve& c, const std::string& a) {
  auto [T2, f] = flip(T, a);
  NormalCurve c2 = transport_curve(c, f, true);
  validate_curve(T2, c2);
  if (classify(T2, c2) != CurveClass::Simple) throw CurveError("curve is not simple after the flip");
  TransferRecord r;
  r.pattern = crossing_pattern(T2, c2, T2.edge_index(f.astar));
  r.k = knot_exponent(T, c);
  r.kprime = knot_exponent(T2, c2);
  SpecPtr Y = shear_spec(T), X = skein_spec(T);
  Exp ka = Y->unit(f.a, 2);
  switch (epsilon(r.pattern)) {
    case 1:
      r.theta_image = SkewExpr::leaf(TorusElement::monomial(Y, r.k) + TorusElement::monomial(Y, r.k - ka));
      break;
    case -1:
      r.theta_image = SkewExpr::inverse(SkewExpr::leaf(TorusElement::monomial(Y, (-1) * r.k) +
                                                       TorusElement::monomial(Y, (-1) * r.k + ka)));
      break;
    default:
      r.theta_image = SkewExpr::leaf(TorusElement::monomial(Y, r.k));
  }
  TorusElement psi2 = TorusElement::monomial(skein_spec(T2), row_times(r.kprime, shear_matrix(T2)));
  r.lhs = apply_map(phi_flip(T, a), psi2);
  r.rhs = map_leaves(r.theta_image, [&](const TorusElement& el) { return SkewExpr::leaf(shear_to_skein(T, el)); }, X);
  auto l = expand(r.lhs), rr = expand(r.rhs);
  r.polynomial = l.has_value() && rr.has_value();
  r.exact_equal = r.polynomial && *l == *rr;
  return r;
}

ExprPtr theta_of_trace(const Triangulation& T, const NormalCurve& c, const std::string& a, const Scalar& middle) {
  auto [T2, f] = flip(T, a);
  NormalCurve c2 = transport_curve(c, f, true);
  TransferRecord tr = knot_monomial_transfer(T, c, a);
  GeneratorImageMap th = theta_flip(T, a, middle);
  SpecPtr Y = shear_spec(T), Y2 = shear_spec(T2);
  TorusElement tr2 = trace_simple(T2, c2).shear;
  std::vector<std::pair<Scalar, ExprPtr>> items;
  for (const auto& [C, coef] : tr2.terms()) {
    std::vector<Exp> pieces{tr.kprime};
    std::vector<ExprPtr> factors{tr.theta_image};
    for (std::size_t i = 0; i < C.size(); ++i) {
      if (C[i] != -1) continue;
      Exp p(C.size(), 0);
      p[i] = -2;
      pieces.push_back(p);
      factors.push_back(th.images.at(Y2->labels[i]).second);
    }
    long pre = word_prefactor(*Y2, pieces);
    items.emplace_back(coef.shifted(static_cast<int>(pre)), SkewExpr::product(std::move(factors), 1, Y));
  }
  return SkewExpr::sum(std::move(items), Y);
}

}  // namespace qtrace
