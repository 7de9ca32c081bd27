#include "qtrace/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qtrace {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw InputError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(at(path, key), "missing required field");
  return *it;
}

const json& array_of(const json& j, const std::string& path, std::size_t exact = 0) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  if (exact && j.size() != exact) throw InputError(path, "expected " + std::to_string(exact) + " entries");
  return j;
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<long>();
}

void only_fields(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw InputError(at(path, it.key()), "unknown field");
  }
}

mpz_class big_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long>()));
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError(path, "not a decimal integer");
    return v;
  }
  throw InputError(path, "expected an integer or integer string");
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin, std::string("malformed JSON: ") + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

Triangulation triangulation_from_json(const json& j) {
  if (!j.is_object()) throw InputError("/", "expected an object");
  only_fields(j, "", {"triangles", "gluing", "boundary_marks", "interior_points"});
  const json& tris = array_of(field(j, "", "triangles"), "/triangles");
  if (tris.empty()) throw InputError("/triangles", "no triangles");
  std::map<long, int> side_slot;
  std::vector<std::string> labels;
  bool any_labels = false;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    std::string tp = at("/triangles", t);
    if (!tris[t].is_object()) throw InputError(tp, "expected an object");
    only_fields(tris[t], tp, {"sides", "labels"});
    const json& sides = array_of(field(tris[t], tp, "sides"), at(tp, "sides"), 3);
    for (std::size_t i = 0; i < 3; ++i) {
      long id = integer(sides[i], at(at(tp, "sides"), i));
      if (!side_slot.emplace(id, static_cast<int>(3 * t + i)).second)
        throw InputError(at(at(tp, "sides"), i), "side id " + std::to_string(id) + " used twice");
    }
    if (tris[t].contains("labels")) {
      if (!any_labels && t > 0) throw InputError(at(tp, "labels"), "labels must be given on every triangle or none");
      any_labels = true;
      const json& ls = array_of(tris[t]["labels"], at(tp, "labels"), 3);
      for (std::size_t i = 0; i < 3; ++i) {
        if (!ls[i].is_string()) throw InputError(at(at(tp, "labels"), i), "expected a string");
        labels.push_back(ls[i].get<std::string>());
      }
    } else if (any_labels) {
      throw InputError(at(tp, "labels"), "labels must be given on every triangle or none");
    }
  }
  std::vector<std::pair<int, int>> gluing;
  std::set<int> glued;
  const json& gl = array_of(field(j, "", "gluing"), "/gluing");
  for (std::size_t g = 0; g < gl.size(); ++g) {
    std::string gp = at("/gluing", g);
    array_of(gl[g], gp, 2);
    int slots[2];
    for (std::size_t i = 0; i < 2; ++i) {
      long id = integer(gl[g][i], at(gp, i));
      auto it = side_slot.find(id);
      if (it == side_slot.end()) throw InputError(at(gp, i), "unknown side id " + std::to_string(id));
      slots[i] = it->second;
      if (!glued.insert(slots[i]).second) throw InputError(at(gp, i), "side " + std::to_string(id) + " is glued twice");
    }
    gluing.emplace_back(slots[0], slots[1]);
  }
  Triangulation T;
  try {
    T = Triangulation::from_gluing(tris.size(), gluing, labels);
    validate(T);
  } catch (const SurfaceError& e) {
    throw InputError("/", std::string(kind_name(e.kind())) + ": " + e.what());
  }
  Topology topo = T.topology();
  if (j.contains("boundary_marks")) {
    const json& bm = array_of(j["boundary_marks"], "/boundary_marks");
    std::vector<int> want;
    for (std::size_t i = 0; i < bm.size(); ++i) want.push_back(static_cast<int>(integer(bm[i], at("/boundary_marks", i))));
    std::vector<int> have = topo.boundary_marks;
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want != have) throw InputError("/boundary_marks", "does not match the marked points derived from the gluing");
  }
  if (j.contains("interior_points")) {
    long n = integer(j["interior_points"], "/interior_points");
    if (n != topo.interior_points)
      throw InputError("/interior_points", "gluing yields " + std::to_string(topo.interior_points) + " interior points");
  } else if (topo.interior_points > 0) {
    throw InputError("/interior_points", "required when the gluing has interior vertices");
  }
  return T;
}

json triangulation_to_json(const Triangulation& T) {
  json j;
  j["triangles"] = json::array();
  for (std::size_t t = 0; t < T.num_triangles(); ++t) {
    auto l = T.triangle_labels(static_cast<int>(t));
    j["triangles"].push_back({{"sides", {3 * t, 3 * t + 1, 3 * t + 2}}, {"labels", {l[0], l[1], l[2]}}});
  }
  j["gluing"] = json::array();
  for (int s = 0; s < static_cast<int>(T.num_sides()); ++s)
    if (T.partner(s) > s) j["gluing"].push_back({s, T.partner(s)});
  Topology topo = T.topology();
  j["boundary_marks"] = topo.boundary_marks;
  if (topo.interior_points) j["interior_points"] = topo.interior_points;
  return j;
}

NormalCurve curve_from_json(const json& j) {
  if (!j.is_object()) throw InputError("/", "expected an object");
  only_fields(j, "", {"steps"});
  const json& steps = array_of(field(j, "", "steps"), "/steps");
  if (steps.empty()) throw InputError("/steps", "curve has no steps");
  NormalCurve c;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string sp = at("/steps", i);
    if (!steps[i].is_object()) throw InputError(sp, "expected an object");
    only_fields(steps[i], sp, {"tri", "in", "out"});
    Step s;
    s.tri = static_cast<int>(integer(field(steps[i], sp, "tri"), at(sp, "tri")));
    s.in = static_cast<int>(integer(field(steps[i], sp, "in"), at(sp, "in")));
    s.out = static_cast<int>(integer(field(steps[i], sp, "out"), at(sp, "out")));
    if (s.in < 0 || s.in > 2) throw InputError(at(sp, "in"), "side index must be 0, 1 or 2");
    if (s.out < 0 || s.out > 2) throw InputError(at(sp, "out"), "side index must be 0, 1 or 2");
    if (s.in == s.out) throw InputError(sp, "in and out sides coincide");
    c.steps.push_back(s);
  }
  return c;
}

json curve_to_json(const NormalCurve& c) {
  json j;
  j["steps"] = json::array();
  for (const auto& s : c.steps) j["steps"].push_back({{"tri", s.tri}, {"in", s.in}, {"out", s.out}});
  return j;
}

TorusElement element_from_json(const json& j, const SpecPtr& spec) {
  if (!j.is_object()) throw InputError("/", "expected an object");
  // "generators" and "text" are what element_to_json adds; the text form is not parsed back.
  only_fields(j, "", {"terms", "generators", "text"});
  if (j.contains("generators")) {
    const json& g = array_of(j["generators"], "/generators");
    bool same = g.size() == spec->size();
    for (std::size_t i = 0; same && i < g.size(); ++i) same = g[i].is_string() && g[i] == spec->labels[i];
    if (!same) throw InputError("/generators", "generators do not match the torus");
  }
  const json& terms = array_of(field(j, "", "terms"), "/terms");
  TorusElement a(spec);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string tp = at("/terms", i);
    if (!terms[i].is_object()) throw InputError(tp, "expected an object");
    only_fields(terms[i], tp, {"exp", "coef"});
    Exp k(spec->size(), 0);
    if (terms[i].contains("exp")) {
      const json& ex = terms[i]["exp"];
      if (!ex.is_object()) throw InputError(at(tp, "exp"), "expected an object");
      for (auto it = ex.begin(); it != ex.end(); ++it) {
        int idx = spec->index(it.key());
        if (idx < 0) throw InputError(at(at(tp, "exp"), it.key()), "not a generator of this torus");
        k[idx] = integer(it.value(), at(at(tp, "exp"), it.key()));
      }
    }
    Scalar coef = 1;
    if (terms[i].contains("coef")) {
      const json& cj = terms[i]["coef"];
      std::string cp = at(tp, "coef");
      if (cj.is_array()) {
        coef = 0;
        for (std::size_t r = 0; r < cj.size(); ++r) {
          array_of(cj[r], at(cp, r), 2);
          long e8 = integer(cj[r][0], at(at(cp, r), 0));
          coef += Scalar::monomial(static_cast<int>(e8), big_integer(cj[r][1], at(at(cp, r), 1)));
        }
      } else {
        coef = Scalar::monomial(0, big_integer(cj, cp));
      }
    }
    a.add_term(k, coef);
  }
  return a;
}

json scalar_to_json(const Scalar& s) {
  json j = json::array();
  for (const auto& [e, c] : s.terms()) j.push_back({e, c.get_str()});
  return j;
}

json exp_to_json(const Exp& k, const TorusSpec& spec) {
  json j = json::object();
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] != 0) j[spec.labels[i]] = k[i];
  return j;
}

json element_to_json(const TorusElement& a) {
  json j;
  j["generators"] = a.spec()->labels;
  j["terms"] = json::array();
  for (const auto& [k, c] : a.terms()) j["terms"].push_back({{"exp", exp_to_json(k, *a.spec())}, {"coef", scalar_to_json(c)}});
  j["text"] = a.str();
  return j;
}

json matrix_to_json(const IntMatrix& M) {
  json j = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) j.push_back(M.row(i));
  return j;
}

json report_to_json(const VerifyReport& r) {
  auto sci = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return std::string(buf);
  };
  json j;
  j["verdict"] = verdict_name(r.verdict);
  j["max_deviation"] = sci(r.max_dev);
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["orders"] = json::array();
  for (const auto& o : r.orders) {
    json oj{{"L", o.L}, {"dim", o.dim}, {"max_deviation", sci(o.max_dev)}, {"conclusive", o.conclusive}};
    if (!o.note.empty()) oj["note"] = o.note;
    j["orders"].push_back(oj);
  }
  return j;
}

}  // namespace qtrace
