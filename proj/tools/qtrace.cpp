#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qtrace/coordinate_change.hpp"
#include "qtrace/curves.hpp"
#include "qtrace/json_io.hpp"
#include "qtrace/puncture.hpp"
#include "qtrace/shear.hpp"
#include "qtrace/suites.hpp"
#include "qtrace/surface.hpp"
#include "qtrace/trace.hpp"

using namespace qtrace;

namespace {

constexpr int kOk = 0, kFail = 1, kInput = 2, kInternal = 3;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

bool is_inline(const std::string& arg) { return !arg.empty() && (arg.front() == '{' || arg.front() == '['); }

std::string origin_name(const std::string& arg) { return is_inline(arg) ? "<inline>" : arg; }

json load_argument(const std::string& arg) {
  if (is_inline(arg)) return parse_json_text(arg, "<inline>");
  return load_json_file(arg);
}

// Input errors from nested documents carry the argument they came from.
template <class F>
auto within(const std::string& origin, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError(origin_name(origin) + ":" + e.path(), std::string(e.what()).substr(e.path().size() + 2));
  }
}

Triangulation load_surface(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) {
    try {
      return library_surface(arg.substr(8));
    } catch (const std::invalid_argument&) {
      throw InputError(arg, "malformed library surface name");
    } catch (const SurfaceError& e) {
      throw InputError(arg, e.what());
    }
  }
  json j = load_argument(arg);
  return within(arg, [&] { return triangulation_from_json(j); });
}

NormalCurve load_curve(const Triangulation& T, const std::string& arg) {
  json j = load_argument(arg);
  NormalCurve c = within(arg, [&] { return curve_from_json(j); });
  try {
    validate_curve(T, c);
  } catch (const CurveError& e) {
    throw InputError(origin_name(arg), e.what());
  }
  return c;
}

void require_marked(const Triangulation& T, const std::string& arg) {
  if (T.generalized()) throw InputError(origin_name(arg), "surface has interior marked points; use the puncture commands");
}

std::string exp_text(const Exp& k, const std::vector<std::string>& labels) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    os << (any ? " " : "") << labels[i] << ":" << k[i];
    any = true;
  }
  return any ? os.str() : "0";
}

std::string state_text(const State& s) {
  std::string r;
  for (int v : s) r += v > 0 ? '+' : '-';
  return r;
}

void print_matrix(const std::string& title, const IntMatrix& M) {
  std::cout << title << " (" << M.rows() << "x" << M.cols() << ")\n" << M.str();
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string check_suffix(const Check& c) {
  std::string s;
  if (c.exact) {
    s = "exact";
  } else if (c.report) {
    s = "L=";
    for (std::size_t i = 0; i < c.report->orders.size(); ++i) {
      const auto& o = c.report->orders[i];
      s += (i ? "," : "") + std::to_string(o.L) + (o.conclusive ? "" : "?");
    }
    s += " dev=" + sci(c.report->max_dev);
  }
  if (!c.detail.empty()) s += (s.empty() ? "" : "; ") + c.detail;
  return s;
}

json check_json(const Check& c) {
  json j{{"name", c.name}, {"verdict", verdict_name(c.verdict)}, {"exact", c.exact}};
  if (c.report) j["repcheck"] = report_to_json(*c.report);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

int emit_suite(const SuiteReport& r, const VerifyOptions& opts, bool as_json) {
  std::string orders;
  for (std::size_t i = 0; i < opts.orders.size(); ++i) orders += (i ? "," : "") + std::to_string(opts.orders[i]);
  if (as_json) {
    json j{{"suite", r.suite}, {"verdict", verdict_name(r.verdict())}, {"seed", opts.seed}, {"trials", opts.trials},
           {"orders", opts.orders}, {"tolerance", sci(opts.tolerance)}};
    j["checks"] = json::array();
    for (const auto& c : r.checks) j["checks"].push_back(check_json(c));
    print_json(j);
  } else {
    for (const auto& c : r.checks) std::cout << verdict_name(c.verdict) << "  " << c.name << "  [" << check_suffix(c) << "]\n";
    std::cout << "summary " << r.suite << ": " << verdict_name(r.verdict()) << " (" << r.count(Verdict::Pass) << " pass, "
              << r.count(Verdict::Fail) << " fail, " << r.count(Verdict::Inconclusive) << " inconclusive; seed "
              << opts.seed << ", trials " << opts.trials << ", orders " << orders << ")\n";
  }
  return r.verdict() == Verdict::Fail ? kFail : kOk;
}

struct RepFlags {
  std::uint64_t seed = 1;
  int trials = 20;
  std::vector<int> orders{5, 7, 11};
  unsigned threads = 0;
  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "seed for the random test vectors")->capture_default_str();
    app->add_option("--trials", trials, "random vectors per root order")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--orders", orders, "odd prime root orders")->capture_default_str()->delimiter(',');
    app->add_option("--threads", threads, "worker threads (0: all cores, capped by QTRACE_THREADS)")->capture_default_str();
  }
  VerifyOptions options() const {
    VerifyOptions o;
    o.seed = seed;
    o.trials = trials;
    o.orders = orders;
    o.threads = threads;
    return o;
  }
};

int cmd_surf_matrices(const std::string& surf, bool as_json) {
  Triangulation T = load_surface(surf);
  IntMatrix Q = face_matrix(T), H = shear_matrix(T);
  std::optional<IntMatrix> P;
  std::optional<DualityReport> d;
  if (!T.generalized()) {
    P = vertex_matrix(T);
    d = duality_check(T);
  }
  Topology topo = T.topology();
  if (as_json) {
    json j{{"edges", T.labels()}, {"inner", T.inner_labels()}, {"triangles", T.num_triangles()},
           {"boundary_marks", topo.boundary_marks}, {"interior_points", topo.interior_points}, {"genus", topo.genus}};
    j["Q"] = matrix_to_json(Q);
    if (P) j["P"] = matrix_to_json(*P);
    j["H"] = matrix_to_json(H);
    if (d)
      j["duality"] = {{"verdict", d->ok ? "PASS" : "FAIL"}, {"PH", d->ph_ok}, {"HPH", d->hph_ok}, {"rank", d->rank}};
    print_json(j);
  } else {
    std::cout << "triangles " << T.num_triangles() << ", edges " << T.num_edges() << ", inner " << T.inner_edges().size()
              << ", genus " << topo.genus << ", interior points " << topo.interior_points << "\n";
    std::cout << "boundary marks:";
    for (int b : topo.boundary_marks) std::cout << " " << b;
    std::cout << "\nedges:";
    for (const auto& l : T.labels()) std::cout << " " << l;
    std::cout << "\ninner:";
    for (const auto& l : T.inner_labels()) std::cout << " " << l;
    std::cout << "\n";
    print_matrix("Q", Q);
    if (P) print_matrix("P", *P);
    print_matrix("H", H);
    if (d) {
      std::cout << "duality: " << (d->ok ? "PASS" : "FAIL") << " (PH^T = -4 id: " << (d->ph_ok ? "yes" : "no")
                << ", HPH^T = -4 Q_inner: " << (d->hph_ok ? "yes" : "no") << ", rank H = " << d->rank << ")\n";
      if (!d->ok) std::cout << d->message << "\n";
    } else {
      std::cout << "P and duality are defined on the lift; see `puncture lift`\n";
    }
  }
  return d && !d->ok ? kFail : kOk;
}

int cmd_surf_export(const std::string& surf) {
  print_json(triangulation_to_json(load_surface(surf)));
  return kOk;
}

int cmd_curve_classify(const std::string& surf, const std::string& curve, bool as_json) {
  Triangulation T = load_surface(surf);
  NormalCurve c = load_curve(T, curve);
  CurveClass k = classify(T, c);
  std::vector<std::string> crossed;
  for (int e : crossing_edges(T, c)) crossed.push_back(T.label(e));
  json patterns = json::object();
  for (auto [e, m] : edge_multiplicities(T, c)) {
    (void)m;
    patterns[T.label(e)] = pattern_name(crossing_pattern(T, c, e));
  }
  int base = default_base_edge(T, c);
  if (as_json) {
    json j{{"class", class_name(k)}, {"crossings", crossed}, {"patterns", patterns}};
    j["base_edge"] = base >= 0 ? json(T.label(base)) : json(nullptr);
    print_json(j);
  } else {
    std::cout << "class: " << class_name(k) << "\ncrossings:";
    for (const auto& l : crossed) std::cout << " " << l;
    std::cout << "\n";
    for (auto it = patterns.begin(); it != patterns.end(); ++it)
      std::cout << "pattern " << it.key() << ": " << it.value().get<std::string>() << "\n";
    std::cout << "base edge: " << (base >= 0 ? T.label(base) : std::string("none")) << "\n";
  }
  return kOk;
}

int cmd_curve_states(const std::string& surf, const std::string& curve, bool as_json) {
  Triangulation T = load_surface(surf);
  NormalCurve c = load_curve(T, curve);
  int base = default_base_edge(T, c);
  if (base >= 0) c = based_at(T, c, base);
  std::vector<std::string> crossed;
  for (int e : crossing_edges(T, c)) crossed.push_back(T.label(e));
  auto states = enumerate_states(T, c);
  std::vector<std::string> inner = T.inner_labels();
  json arr = json::array();
  for (const auto& s : states) {
    json j{{"state", s}, {"k", json::object()}};
    Exp k = state_exponents(T, c, s);
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i]) j["k"][inner[i]] = k[i];
    if (base >= 0) j["u_eighths"] = u_of_state(T, c, s);
    arr.push_back(j);
  }
  if (as_json) {
    json j{{"crossings", crossed}, {"count", states.size()}, {"states", arr}};
    j["base_edge"] = base >= 0 ? json(T.label(base)) : json(nullptr);
    print_json(j);
  } else {
    std::cout << "crossings:";
    for (const auto& l : crossed) std::cout << " " << l;
    std::cout << "\nstates: " << states.size() << "\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::cout << state_text(states[i]) << "  k = " << exp_text(state_exponents(T, c, states[i]), inner);
      if (base >= 0) std::cout << "  u = " << u_of_state(T, c, states[i]) << "/8";
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_curve_build(const std::string& surf, const std::vector<std::string>& coords) {
  Triangulation T = load_surface(surf);
  std::map<std::string, int> counts;
  for (const auto& c : coords) {
    auto eq = c.find('=');
    if (eq == std::string::npos) throw InputError(c, "expected LABEL=COUNT");
    try {
      T.edge_index(c.substr(0, eq));
      counts[c.substr(0, eq)] = std::stoi(c.substr(eq + 1));
    } catch (const std::exception& e) {
      throw InputError(c, e.what());
    }
  }
  auto comps = curves_from_coordinates(T, counts);
  if (comps.size() != 1)
    throw InputError("coordinates", "describe " + std::to_string(comps.size()) + " components, expected one curve");
  print_json(curve_to_json(comps.front()));
  return kOk;
}

int cmd_trace(const std::string& surf, const std::string& curve, const std::string& side, bool as_json) {
  Triangulation T = load_surface(surf);
  require_marked(T, surf);
  NormalCurve c = load_curve(T, curve);
  if (classify(T, c) != CurveClass::Simple && default_base_edge(T, c) < 0)
    throw InputError(origin_name(curve), "curve is not simple and crosses no inner edge exactly once");
  TraceResult r = trace_any(T, c);
  bool shear = side != "skein", skein = side != "shear";
  if (as_json) {
    json j{{"class", class_name(classify(T, c))}, {"states", r.state_count}};
    if (shear) j["shear"] = element_to_json(r.shear);
    if (skein) j["skein"] = element_to_json(r.skein);
    print_json(j);
  } else {
    std::cout << "class: " << class_name(classify(T, c)) << "\nstates: " << r.state_count << "\n";
    if (shear) std::cout << "shear (" << r.shear.size() << " terms): " << r.shear.str() << "\n";
    if (skein) std::cout << "skein (" << r.skein.size() << " terms): " << r.skein.str() << "\n";
  }
  return kOk;
}

int cmd_shear_psi(const std::string& surf, const std::string& element, bool as_json) {
  Triangulation T = load_surface(surf);
  require_marked(T, surf);
  json j = load_argument(element);
  TorusElement a = within(element, [&] { return element_from_json(j, shear_spec(T)); });
  TorusElement img = shear_to_skein(T, a);
  if (as_json) print_json(json{{"source", element_to_json(a)}, {"image", element_to_json(img)}});
  else std::cout << "y: " << a.str() << "\npsi: " << img.str() << "\n";
  return kOk;
}

void print_map(const GeneratorImageMap& m, json* out) {
  for (const auto& [l, img] : m.images) {
    auto ex = expand(img.first);
    std::string text = ex ? ex->str() : to_string(img.first);
    if (out) (*out)[l] = text;
    else std::cout << l << " -> " << text << "\n";
  }
}

int cmd_flipseq(const std::string& surf, const std::vector<std::string>& edges, const std::string& side, bool verify,
                const RepFlags& flags, bool as_json) {
  Triangulation T = load_surface(surf);
  require_marked(T, surf);
  FlipSide fs = side == "skein" ? FlipSide::Skein : FlipSide::Shear;
  FlipSequence seq;
  try {
    seq = compose_flips(T, edges, fs);
  } catch (const SurfaceError& e) {
    throw InputError("edges", e.what());
  }
  json j{{"side", side}, {"edges", edges}};
  j["final"] = triangulation_to_json(seq.triangulations.back());
  json flips = json::array();
  for (const auto& f : seq.flips)
    flips.push_back({{"a", f.a}, {"astar", f.astar}, {"b", f.b}, {"c", f.c}, {"d", f.d}, {"e", f.e},
                     {"case", coincidence_name(f.coincidence)}});
  j["flips"] = flips;
  if (as_json) {
    j["images"] = json::object();
    print_map(seq.composite, &j["images"]);
  } else {
    for (const auto& f : seq.flips)
      std::cout << "flip " << f.a << " -> " << f.astar << " (b=" << f.b << " c=" << f.c << " d=" << f.d << " e=" << f.e
                << ", " << coincidence_name(f.coincidence) << ")\n";
    std::cout << "composite images:\n";
    print_map(seq.composite, nullptr);
  }
  int code = kOk;
  if (verify) {
    VerifyOptions opts = flags.options();
    SuiteReport rep{"flipseq", {}};
    std::vector<std::string> back;
    for (auto it = seq.flips.rbegin(); it != seq.flips.rend(); ++it) back.push_back(it->astar);
    FlipSequence rev = compose_flips(seq.triangulations.back(), back, fs);
    GeneratorImageMap round = compose(seq.composite, rev.composite);
    SpecPtr spec = round.target;
    auto gen = [&](const std::string& l, long e) { return SkewExpr::leaf(TorusElement::monomial(spec, spec->unit(l, e))); };
    for (const auto& [l, img] : round.images)
      rep.checks.push_back(check_identity("sequence then reverse: " + l, img.first, gen(l, 2), opts));
    std::map<std::string, std::string> fixed;
    for (int e : T.boundary_edges()) fixed[T.label(e)] = T.label(e);
    if (!edges.empty()) {
      if (auto sigma = find_relabeling(T, seq.triangulations.back(), fixed)) {
        for (const auto& l : spec->labels)
          rep.checks.push_back(check_identity("closed loop: " + sigma->at(l) + " -> " + l,
                                              seq.composite.images.at(sigma->at(l)).first, gen(l, 2), opts));
      }
    }
    if (as_json) {
      j["verification"] = json::array();
      for (const auto& c : rep.checks) j["verification"].push_back(check_json(c));
      j["verdict"] = verdict_name(rep.verdict());
    } else {
      std::cout << "verification:\n";
    }
    if (!as_json) code = emit_suite(rep, opts, false);
    else code = rep.verdict() == Verdict::Fail ? kFail : kOk;
  }
  if (as_json) print_json(j);
  return code;
}

LiftOptions lift_options(const std::string& rule, const std::vector<std::string>& corners) {
  LiftOptions o;
  o.rule = rule == "next" ? LiftOptions::Rule::Next : LiftOptions::Rule::Prev;
  for (const auto& c : corners) {
    int p, t, i;
    char x1, x2;
    std::istringstream is(c);
    if (!(is >> p >> x1 >> t >> x2 >> i) || x1 != ':' || x2 != ':' || !is.eof())
      throw InputError("--corner", "expected POINT:TRIANGLE:CORNER, got " + c);
    o.corners[p] = {t, i};
  }
  return o;
}

LiftData checked_lift(const Triangulation& T, const LiftOptions& o) {
  try {
    return lift(T, o);
  } catch (const std::invalid_argument& e) {
    throw InputError("--corner", e.what());
  }
}

int cmd_puncture_lift(const std::string& surf, const LiftOptions& o, bool as_json) {
  Triangulation T = load_surface(surf);
  LiftData L = checked_lift(T, o);
  BarMatrices b = bar_matrices(L);
  DualityReport d = duality_check(L.target);
  if (as_json) {
    json fakes = json::array();
    for (const auto& f : L.fakes)
      fakes.push_back({{"point", f.point}, {"triangle", f.triangle}, {"loop", f.loop}, {"diagonal", f.diagonal},
                       {"original", f.original}});
    json j{{"lift", triangulation_to_json(L.target)}, {"fakes", fakes}, {"omega", L.omega}};
    j["Omega"] = matrix_to_json(L.Omega);
    j["Hbar"] = matrix_to_json(b.Hbar);
    j["Qbar"] = matrix_to_json(b.Qbar);
    j["checks"] = {{"Qbar", b.qbar_ok}, {"HPH", b.hph_ok}, {"rank", b.rank_ok}, {"lift_duality", d.ok}};
    print_json(j);
  } else {
    std::cout << "lift: " << L.target.num_triangles() << " triangles, " << L.target.num_edges() << " edges\n";
    for (std::size_t t = 0; t < L.target.num_triangles(); ++t) {
      auto l = L.target.triangle_labels(static_cast<int>(t));
      std::cout << "  triangle " << t << ": " << l[0] << " " << l[1] << " " << l[2] << "\n";
    }
    for (const auto& f : L.fakes)
      std::cout << "fake triangle " << f.triangle << " at point " << f.point << ": loop " << f.loop << ", diagonal "
                << f.diagonal << " contracts to " << f.original << "\n";
    print_matrix("Omega", L.Omega);
    print_matrix("Hbar", b.Hbar);
    std::cout << "Qbar = Omega Q Omega^T: " << (b.qbar_ok ? "PASS" : "FAIL") << "\nHbar P Hbar^T = -4 Qbar: "
              << (b.hph_ok ? "PASS" : "FAIL") << "\nrank Hbar: " << (b.rank_ok ? "PASS" : "FAIL")
              << "\nlift duality: " << (d.ok ? "PASS" : "FAIL") << "\n";
  }
  return b.ok() && d.ok ? kOk : kFail;
}

int cmd_puncture_trace(const std::string& surf, const std::string& curve, const LiftOptions& o, bool as_json) {
  Triangulation T = load_surface(surf);
  NormalCurve c = load_curve(T, curve);
  if (default_base_edge(T, c) < 0) throw InputError(origin_name(curve), "curve crosses no inner edge exactly once");
  LiftData L = checked_lift(T, o);
  BarTraceResult r = bar_trace(L, c);
  EquivariantStates eq = equivariant_states(L, c);
  if (as_json) {
    json j{{"shear", element_to_json(r.shear)}, {"skein", element_to_json(r.skein)},
           {"projected", element_to_json(r.projected)}, {"agree", r.agree}};
    j["states"] = {{"lifted_admissible", eq.admissible_total}, {"equivariant", eq.target_states.size()},
                   {"bijective", eq.bijective}, {"exponents_match", eq.exponents_match}};
    print_json(j);
  } else {
    std::cout << "shear (" << r.shear.size() << " terms): " << r.shear.str() << "\n";
    std::cout << "skein (" << r.skein.size() << " terms): " << r.skein.str() << "\n";
    std::cout << "projected lift trace: " << r.projected.str() << "\n";
    std::cout << "pipelines agree: " << (r.agree ? "yes" : "no") << "\n";
    std::cout << "equivariant states: " << eq.target_states.size() << " of " << eq.admissible_total
              << " lifted states; restriction bijective: " << (eq.bijective ? "yes" : "no")
              << "; exponents match: " << (eq.exponents_match ? "yes" : "no") << "\n";
  }
  return r.agree && eq.bijective && eq.exponents_match ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum traces and coordinate changes on triangulated surfaces"};
  app.require_subcommand(1);
  std::function<int()> action;
  bool as_json = false;
  auto json_flag = [&](CLI::App* a) { a->add_flag("--json", as_json, "machine-readable output"); };
  std::string surf, curve, element, side = "both", suite, rule = "prev";
  std::vector<std::string> edges, corners;
  RepFlags flags;
  bool verify = false;

  auto* s = app.add_subcommand("surf", "surface matrices");
  s->require_subcommand(1);
  auto* sm = s->add_subcommand("matrices", "face, vertex and shear matrices with the duality report");
  sm->add_option("surface", surf, "triangulation JSON or builtin:NAME")->required();
  json_flag(sm);
  sm->callback([&] { action = [&] { return cmd_surf_matrices(surf, as_json); }; });
  auto* se = s->add_subcommand("export", "print a triangulation as JSON");
  se->add_option("surface", surf, "triangulation JSON or builtin:NAME")->required();
  se->callback([&] { action = [&] { return cmd_surf_export(surf); }; });

  auto* c = app.add_subcommand("curve", "normal curves");
  c->require_subcommand(1);
  auto* cc = c->add_subcommand("classify", "simple / almost-simple / general and crossing patterns");
  cc->add_option("surface", surf)->required();
  cc->add_option("curve", curve)->required();
  json_flag(cc);
  cc->callback([&] { action = [&] { return cmd_curve_classify(surf, curve, as_json); }; });
  auto* cs = c->add_subcommand("states", "admissible states with exponents and phases");
  cs->add_option("surface", surf)->required();
  cs->add_option("curve", curve)->required();
  json_flag(cs);
  cs->callback([&] { action = [&] { return cmd_curve_states(surf, curve, as_json); }; });

  std::vector<std::string> coords;
  auto* cb = c->add_subcommand("build", "curve JSON from normal coordinates");
  cb->add_option("surface", surf)->required();
  cb->add_option("coordinates", coords, "LABEL=COUNT ...")->required();
  cb->callback([&] { action = [&] { return cmd_curve_build(surf, coords); }; });

  auto* t = app.add_subcommand("trace", "quantum trace of a closed curve");
  t->add_option("surface", surf)->required();
  t->add_option("curve", curve)->required();
  t->add_option("--side", side, "skein, shear or both")->check(CLI::IsMember({"skein", "shear", "both"}))->capture_default_str();
  json_flag(t);
  t->callback([&] { action = [&] { return cmd_trace(surf, curve, side, as_json); }; });

  auto* sh = app.add_subcommand("shear", "shear coordinates");
  sh->require_subcommand(1);
  auto* sp = sh->add_subcommand("psi", "image of a shear-side element in skein coordinates");
  sp->add_option("surface", surf)->required();
  sp->add_option("element", element, "element JSON file or inline JSON")->required();
  json_flag(sp);
  sp->callback([&] { action = [&] { return cmd_shear_psi(surf, element, as_json); }; });

  std::string flip_side = "shear";
  auto* f = app.add_subcommand("flipseq", "compose coordinate changes along a flip sequence");
  f->add_option("surface", surf)->required();
  f->add_option("edges", edges, "edge labels to flip in order");
  f->add_option("--side", flip_side, "shear or skein")->check(CLI::IsMember({"shear", "skein"}))->capture_default_str();
  f->add_flag("--verify", verify, "check the composite numerically");
  flags.attach(f);
  json_flag(f);
  f->callback([&] { action = [&] { return cmd_flipseq(surf, edges, flip_side, verify, flags, as_json); }; });

  auto* p = app.add_subcommand("puncture", "surfaces with interior marked points");
  p->require_subcommand(1);
  auto* pl = p->add_subcommand("lift", "marked-surface lift with fake triangles");
  pl->add_option("surface", surf)->required();
  pl->add_option("--rule", rule, "diagonal rule")->check(CLI::IsMember({"prev", "next"}))->capture_default_str();
  pl->add_option("--corner", corners, "POINT:TRIANGLE:CORNER disk placement");
  json_flag(pl);
  pl->callback([&] { action = [&] { return cmd_puncture_lift(surf, lift_options(rule, corners), as_json); }; });
  auto* pt = p->add_subcommand("trace", "punctured trace through the lift");
  pt->add_option("surface", surf)->required();
  pt->add_option("curve", curve)->required();
  pt->add_option("--rule", rule, "diagonal rule")->check(CLI::IsMember({"prev", "next"}))->capture_default_str();
  pt->add_option("--corner", corners, "POINT:TRIANGLE:CORNER disk placement");
  json_flag(pt);
  pt->callback([&] { action = [&] { return cmd_puncture_trace(surf, curve, lift_options(rule, corners), as_json); }; });

  auto* v = app.add_subcommand("verify", "run a verification suite");
  // "corrupted" is the negative control and is expected to FAIL.
  auto verify_names = suite_names();
  verify_names.push_back("corrupted");
  v->add_option("suite", suite)->required()->check(CLI::IsMember(verify_names));
  flags.attach(v);
  json_flag(v);
  v->callback([&] {
    action = [&] {
      VerifyOptions opts = flags.options();
      return emit_suite(run_suite(suite, opts), opts, as_json);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  auto odd_prime = [](int L) {
    if (L < 3 || L % 2 == 0) return false;
    for (int d = 3; d * d <= L; d += 2)
      if (L % d == 0) return false;
    return true;
  };
  for (int L : flags.orders)
    if (!odd_prime(L)) {
      std::cerr << "error: --orders: root orders must be odd primes\n";
      return kInput;
    }
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const SurfaceError& e) {
    std::cerr << "input error: " << kind_name(e.kind()) << ": " << e.what() << "\n";
    return kInput;
  } catch (const CurveError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
