#include "kolmo/catalog/catalog.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/evaluate.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/expr/zero_test.hpp"
#include "kolmo/symmetry/algebra.hpp"
#include "kolmo/symmetry/vector_field.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#ifndef KOLMO_DEFAULT_CATALOG
#define KOLMO_DEFAULT_CATALOG "data/catalog.json"
#endif

namespace kolmo {

using nlohmann::ordered_json;

namespace {

constexpr const char* kSchemaVersion = "1";

// ---- reading ----

class Reader {
 public:
  Reader(const ordered_json& j, std::string id) : j_(j), id_(std::move(id)) {
    if (!j_.is_object()) throw CatalogError(id_, "", "expected an object");
  }

  std::string str(const char* key, bool required = false) const {
    auto it = j_.find(key);
    if (it == j_.end()) {
      if (required) throw CatalogError(id_, key, "missing required field");
      return {};
    }
    if (!it->is_string()) throw CatalogError(id_, key, "expected a string");
    return it->get<std::string>();
  }

  int integer(const char* key, int fallback) const {
    auto it = j_.find(key);
    if (it == j_.end()) return fallback;
    if (!it->is_number_integer()) throw CatalogError(id_, key, "expected an integer");
    return it->get<int>();
  }

  std::vector<std::string> strings(const char* key) const {
    std::vector<std::string> out;
    auto it = j_.find(key);
    if (it == j_.end()) return out;
    if (!it->is_array()) throw CatalogError(id_, key, "expected an array of strings");
    for (auto& v : *it) {
      if (!v.is_string()) throw CatalogError(id_, key, "expected an array of strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  std::map<std::string, std::string> string_map(const char* key) const {
    std::map<std::string, std::string> out;
    auto it = j_.find(key);
    if (it == j_.end()) return out;
    if (!it->is_object()) throw CatalogError(id_, key, "expected an object of strings");
    for (auto& [k, v] : it->items()) {
      if (!v.is_string()) throw CatalogError(id_, std::string(key) + "." + k, "expected a string");
      out[k] = v.get<std::string>();
    }
    return out;
  }

  const ordered_json* child(const char* key) const {
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const std::string& id() const { return id_; }

 private:
  const ordered_json& j_;
  std::string id_;
};

PdeRef read_pde(const ordered_json* j, const std::string& id, const char* field) {
  if (!j) throw CatalogError(id, field, "missing required field");
  PdeRef p;
  if (j->is_string()) {
    p.ref = j->get<std::string>();
    return p;
  }
  Reader r(*j, id);
  p.f1 = r.str("f1", true);
  p.f2 = r.str("f2", true);
  p.y_sign = r.integer("y_sign", 1);
  p.constraints = r.strings("constraints");
  if (p.y_sign != 1 && p.y_sign != -1) throw CatalogError(id, std::string(field) + ".y_sign", "must be 1 or -1");
  return p;
}

MapSpec read_map(const ordered_json* j, const std::string& id) {
  MapSpec m;
  if (!j) return m;
  Reader r(*j, id);
  m.t = r.str("t", true);
  m.x = r.str("x", true);
  m.y = r.str("y", true);
  m.u = r.str("u", true);
  return m;
}

ClassificationEntry read_entry(const ordered_json& j, const std::string& section) {
  if (!j.is_object() || !j.contains("id")) throw CatalogError("", section, "entry without id");
  Reader r(j, j["id"].is_string() ? j["id"].get<std::string>() : "?");
  ClassificationEntry e;
  e.id = r.id();
  e.section = section;
  e.f1 = r.str("f1", true);
  e.f2 = r.str("f2", section != "f1_forms");
  e.y_sign = r.integer("y_sign", 1);
  e.constraints = r.strings("constraints");
  e.free = r.strings("free");
  e.notes = r.str("notes");
  e.printed = r.str("printed");
  if (auto* g = r.child("generators")) {
    if (!g->is_array()) throw CatalogError(e.id, "generators", "expected an array");
    for (auto& item : *g) {
      Reader gr(item, e.id);
      GeneratorItem gi;
      gi.field = gr.str("field", true);
      gi.printed = gr.str("printed");
      gi.alternative = gr.str("alternative");
      gi.note = gr.str("note");
      e.generators.push_back(std::move(gi));
    }
  }
  e.recipe = r.string_map("recipe");
  e.bind = r.string_map("bind");
  e.target_f1 = r.str("target_f1");
  e.target_f2 = r.str("target_f2");
  e.transform = read_map(r.child("transform"), e.id);
  e.alternative = read_map(r.child("alternative"), e.id);
  e.alternative_note = r.str("alternative_note");
  e.inverse = read_map(r.child("inverse"), e.id);
  if (auto* t = r.child("targets")) {
    if (!t->is_array()) throw CatalogError(e.id, "targets", "expected an array");
    for (auto& item : *t) {
      Reader tr(item, e.id);
      TargetRule rule;
      rule.when = tr.str("when");
      rule.row = tr.str("row", true);
      rule.bind = tr.string_map("bind");
      e.targets.push_back(std::move(rule));
    }
  }
  return e;
}

template <typename T, typename F>
std::vector<T> read_array(const ordered_json& root, const char* key, F&& fn, bool required = true) {
  std::vector<T> out;
  auto it = root.find(key);
  if (it == root.end()) {
    if (required) throw CatalogError("", key, "missing section");
    return out;
  }
  if (!it->is_array()) throw CatalogError("", key, "expected an array");
  for (auto& item : *it) out.push_back(fn(item));
  return out;
}

std::string id_of(const ordered_json& j, const char* section) {
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) throw CatalogError("", section, "entry without id");
  return j["id"].get<std::string>();
}

// ---- writing ----

void put(ordered_json& j, const char* key, const std::string& v) {
  if (!v.empty()) j[key] = v;
}
void put(ordered_json& j, const char* key, const std::vector<std::string>& v) {
  if (!v.empty()) j[key] = v;
}
void put(ordered_json& j, const char* key, const std::map<std::string, std::string>& v) {
  if (v.empty()) return;
  ordered_json o = ordered_json::object();
  for (auto& [k, x] : v) o[k] = x;
  j[key] = o;
}

ordered_json write_pde(const PdeRef& p) {
  if (!p.ref.empty()) return p.ref;
  ordered_json j;
  j["f1"] = p.f1;
  j["f2"] = p.f2;
  if (p.y_sign != 1) j["y_sign"] = p.y_sign;
  put(j, "constraints", p.constraints);
  return j;
}

void put_map(ordered_json& j, const char* key, const MapSpec& m) {
  if (m.empty()) return;
  j[key] = ordered_json{{"t", m.t}, {"x", m.x}, {"y", m.y}, {"u", m.u}};
}

ordered_json write_entry(const ClassificationEntry& e) {
  ordered_json j;
  j["id"] = e.id;
  j["f1"] = e.f1;
  put(j, "f2", e.f2);
  if (e.y_sign != 1) j["y_sign"] = e.y_sign;
  put(j, "constraints", e.constraints);
  put(j, "free", e.free);
  if (!e.generators.empty()) {
    ordered_json g = ordered_json::array();
    for (auto& gi : e.generators) {
      ordered_json x;
      x["field"] = gi.field;
      put(x, "printed", gi.printed);
      put(x, "alternative", gi.alternative);
      put(x, "note", gi.note);
      g.push_back(x);
    }
    j["generators"] = g;
  }
  put(j, "recipe", e.recipe);
  put(j, "bind", e.bind);
  put(j, "target_f1", e.target_f1);
  put(j, "target_f2", e.target_f2);
  put_map(j, "transform", e.transform);
  put_map(j, "alternative", e.alternative);
  put(j, "alternative_note", e.alternative_note);
  put_map(j, "inverse", e.inverse);
  if (!e.targets.empty()) {
    ordered_json t = ordered_json::array();
    for (auto& r : e.targets) {
      ordered_json x;
      put(x, "when", r.when);
      x["row"] = r.row;
      put(x, "bind", r.bind);
      t.push_back(x);
    }
    j["targets"] = t;
  }
  put(j, "notes", e.notes);
  put(j, "printed", e.printed);
  return j;
}

ordered_json write_algebra(const AlgebraSpec& a) {
  ordered_json j;
  j["id"] = a.id;
  j["pde"] = write_pde(a.pde);
  ordered_json b = ordered_json::array();
  for (auto& e : a.basis) b.push_back(ordered_json{{"name", e.name}, {"field", e.field}});
  j["basis"] = b;
  ordered_json r = ordered_json::array();
  for (auto& e : a.relations) r.push_back(ordered_json{{"left", e.left}, {"right", e.right}, {"result", e.result}});
  j["relations"] = r;
  put(j, "printed", a.printed);
  return j;
}

ordered_json write_subalgebra(const SubalgebraSpec& s) {
  ordered_json j;
  j["id"] = s.id;
  j["list"] = s.list;
  j["generators"] = s.generators;
  put(j, "constraints", s.constraints);
  if (!s.samples.empty()) {
    ordered_json o = ordered_json::object();
    for (auto& [k, v] : s.samples) o[k] = v;
    j["samples"] = o;
  }
  put(j, "printed", s.printed);
  return j;
}

ordered_json write_solution(const ExactSolution& s) {
  ordered_json j;
  j["id"] = s.id;
  j["pde"] = write_pde(s.pde);
  j["u"] = s.u_expr;
  put(j, "domain", s.domain);
  if (!s.alternatives.empty()) {
    ordered_json a = ordered_json::array();
    for (auto& alt : s.alternatives) {
      ordered_json x;
      x["u"] = alt.u_expr;
      put(x, "note", alt.note);
      a.push_back(x);
    }
    j["alternatives"] = a;
  }
  put(j, "reduction", s.reduction);
  put(j, "phi", s.phi);
  put(j, "notes", s.notes);
  put(j, "printed", s.printed);
  return j;
}

ordered_json write_reduction(const ReductionSpec& r) {
  ordered_json j;
  j["id"] = r.id;
  j["pde"] = write_pde(r.pde);
  j["generators"] = r.generators;
  j["omegas"] = r.omegas;
  j["ansatz"] = r.ansatz;
  j["expected_reduced"] = r.expected_reduced;
  put(j, "constraints", r.constraints);
  if (!r.alternatives.empty()) {
    ordered_json a = ordered_json::array();
    for (auto& v : r.alternatives) {
      ordered_json x;
      x["omegas"] = v.omegas;
      x["ansatz"] = v.ansatz;
      put(x, "expected_reduced", v.expected_reduced);
      put(x, "note", v.note);
      a.push_back(x);
    }
    j["alternatives"] = a;
  }
  put(j, "lifts", r.lifts);
  put(j, "notes", r.notes);
  put(j, "printed", r.printed);
  return j;
}

ordered_json write_probe(const ProbeSpec& p) {
  ordered_json j;
  j["id"] = p.id;
  j["source"] = write_pde(p.source);
  j["target"] = write_pde(p.target);
  put(j, "claim", p.claim);
  put_map(j, "transform", p.transform);
  put(j, "notes", p.notes);
  put(j, "printed", p.printed);
  return j;
}

// ---- validation ----

Expr parse_field(const std::string& id, const std::string& field, const std::string& text) {
  try {
    return parse(text);
  } catch (const std::exception& ex) {
    throw CatalogError(id, field, ex.what());
  }
}

VectorField parse_vf(const std::string& id, const std::string& field, const std::string& text) {
  try {
    return VectorField::parse(text);
  } catch (const std::exception& ex) {
    throw CatalogError(id, field, ex.what());
  }
}

std::vector<Constraint> parse_constraints(const std::string& id, const std::vector<std::string>& texts) {
  std::vector<Constraint> out;
  for (auto& t : texts) {
    try {
      out.push_back(parse_constraint(t));
    } catch (const std::exception& ex) {
      throw CatalogError(id, "constraints", ex.what());
    }
  }
  return out;
}

void add_parameters(std::set<std::string>& out, const Expr& e) {
  for (auto& s : free_symbols(e)) {
    if (Expr::symbol(s, true).symbol_kind() == SymbolKind::parameter) out.insert(s);
  }
}

void add_field_parameters(std::set<std::string>& out, const VectorField& X) {
  for (auto& c : X.coefficients()) add_parameters(out, c);
}

void require_declared(const std::string& id, const std::set<std::string>& used, const std::vector<std::string>& constraints,
                      const std::vector<std::string>& free, const std::set<std::string>& extra = {}) {
  std::set<std::string> declared(free.begin(), free.end());
  declared.insert(extra.begin(), extra.end());
  for (auto& c : parse_constraints(id, constraints)) {
    auto s = c.symbols();
    declared.insert(s.begin(), s.end());
  }
  for (auto& p : used) {
    if (!declared.count(p)) throw CatalogError(id, "constraints", "undeclared parameter '" + p + "'");
  }
}

void validate_entry(const ClassificationEntry& e) {
  std::set<std::string> used;
  Expr f1 = parse_field(e.id, "f1", e.f1);
  add_parameters(used, f1);
  if (!e.f2.empty()) add_parameters(used, parse_field(e.id, "f2", e.f2));
  for (auto& g : e.generators) {
    add_field_parameters(used, parse_vf(e.id, "generators", g.field));
    if (!g.alternative.empty()) add_field_parameters(used, parse_vf(e.id, "generators.alternative", g.alternative));
  }
  std::set<std::string> extra;
  for (auto& [k, v] : e.recipe) {
    if (k.size() != 2 || k[0] != 'a' || k[1] < '1' || k[1] > '8') throw CatalogError(e.id, "recipe", "unknown key " + k);
    add_parameters(used, parse_field(e.id, "recipe." + k, v));
  }
  for (auto& [k, v] : e.bind) {
    add_parameters(used, parse_field(e.id, "bind." + k, v));
    extra.insert(k);
  }
  if (!e.target_f1.empty()) add_parameters(extra, parse_field(e.id, "target_f1", e.target_f1));
  if (!e.target_f2.empty()) add_parameters(extra, parse_field(e.id, "target_f2", e.target_f2));
  for (const MapSpec* m : {&e.transform, &e.alternative, &e.inverse}) {
    if (m->empty()) continue;
    for (auto* s : {&m->t, &m->x, &m->y, &m->u}) add_parameters(used, parse_field(e.id, "transform", *s));
  }
  for (auto& r : e.targets) {
    if (!r.when.empty()) parse_constraints(e.id, {r.when});
    for (auto& [k, v] : r.bind) add_parameters(used, parse_field(e.id, "targets.bind", v));
  }
  // target parameters appear only through bind; everything else must be declared
  for (auto& p : extra) used.erase(p);
  require_declared(e.id, used, e.constraints, e.free);
  try {
    (void)e.instance();
  } catch (const CatalogError&) {
    throw;
  } catch (const std::exception& ex) {
    throw CatalogError(e.id, "f1", ex.what());
  }
}

void validate_pde_ref(const Catalog& c, const PdeRef& p, const std::string& id) {
  if (!p.ref.empty()) {
    if (!c.find_entry(p.ref) && p.ref != c.algebra.id) throw CatalogError(id, "pde", "unknown reference '" + p.ref + "'");
    return;
  }
  std::set<std::string> used;
  add_parameters(used, parse_field(id, "pde.f1", p.f1));
  add_parameters(used, parse_field(id, "pde.f2", p.f2));
  require_declared(id, used, p.constraints, {});
}

// Combination of basis names, e.g. "X1 + alpha*X3".
void validate_combination(const std::string& id, const std::string& text, const std::set<std::string>& names,
                          std::set<std::string>& params) {
  Expr e = parse_field(id, "generators", text);
  bool any = false;
  for (auto& s : free_symbols(e)) {
    if (names.count(s)) {
      any = true;
      Expr coeff = differentiate(e, s);
      for (auto& q : free_symbols(coeff)) {
        if (names.count(q)) throw CatalogError(id, "generators", "not linear in the basis: " + text);
        params.insert(q);
      }
    }
  }
  if (!any) throw CatalogError(id, "generators", "no basis element in '" + text + "'");
}

void validate_omegas(const ReductionSpec& r) {
  std::vector<Expr> omegas;
  for (auto& w : r.omegas) {
    Expr e = parse_field(r.id, "omegas", w);
    for (auto& s : free_symbols(e)) {
      auto k = Expr::symbol(s, true).symbol_kind();
      if (k != SymbolKind::parameter && k != SymbolKind::independent)
        throw CatalogError(r.id, "omegas", "invariant must be a function of (t, x, y): " + w);
    }
    omegas.push_back(e);
  }
  if (omegas.empty() || omegas.size() > 2) throw CatalogError(r.id, "omegas", "expected one or two invariants");
  // Jacobian rank at sample points
  std::vector<Expr> grads;
  for (auto& w : omegas) {
    for (const char* v : {"t", "x", "y"}) grads.push_back(differentiate(w, v));
  }
  Program prog = Program::compile(grads);
  SamplingSpec spec;
  spec.constraints = parse_constraints(r.id, r.constraints);
  Sampler sampler(prog.variables(), spec, false, 0.05);
  Rng rng(0x51ULL);
  std::vector<double> out(grads.size());
  int checked = 0;
  for (int attempt = 0; attempt < 200 && checked < 5; ++attempt) {
    auto vals = sampler.draw(rng);
    if (!sampler.admissible(vals) || prog.run(vals, out, {}) != EvalStatus::ok) continue;
    ++checked;
    bool full = false;
    if (omegas.size() == 1) {
      full = std::abs(out[0]) + std::abs(out[1]) + std::abs(out[2]) > 1e-9;
    } else {
      double c0 = out[1] * out[5] - out[2] * out[4], c1 = out[2] * out[3] - out[0] * out[5],
             c2 = out[0] * out[4] - out[1] * out[3];
      full = std::abs(c0) + std::abs(c1) + std::abs(c2) > 1e-9;
    }
    if (!full) throw CatalogError(r.id, "omegas", "invariants are functionally dependent");
  }
}

void validate(Catalog& c) {
  if (c.schema_version != kSchemaVersion)
    throw CatalogError("", "schema_version", "expected \"" + std::string(kSchemaVersion) + "\", got \"" + c.schema_version + "\"");
  auto count = [](const std::vector<ClassificationEntry>& v, std::size_t n, const char* name) {
    if (v.size() != n)
      throw CatalogError("", name, "expected " + std::to_string(n) + " rows, found " + std::to_string(v.size()));
  };
  count(c.f1_forms, 3, "tables.f1_forms");
  count(c.f2_forms, 13, "tables.f2_forms");
  count(c.classification, 22, "tables.classification");
  count(c.mappings, 6, "tables.mappings");
  count(c.canonical, 14, "tables.canonical");

  std::set<std::string> ids;
  auto unique = [&](const std::string& id) {
    if (!ids.insert(id).second) throw CatalogError(id, "id", "duplicate id");
  };
  for (auto* table : {&c.f1_forms, &c.f2_forms, &c.classification, &c.mappings, &c.canonical}) {
    for (auto& e : *table) {
      unique(e.id);
      validate_entry(e);
    }
  }
  for (auto& e : c.mappings) {
    if (e.transform.empty()) throw CatalogError(e.id, "transform", "missing required field");
    if (e.targets.empty()) throw CatalogError(e.id, "targets", "missing required field");
    for (auto& r : e.targets) {
      auto* t = c.find_entry(r.row);
      if (!t || t->section != "canonical") throw CatalogError(e.id, "targets", "unknown canonical row '" + r.row + "'");
    }
  }

  unique(c.algebra.id);
  validate_pde_ref(c, c.algebra.pde, c.algebra.id);
  std::set<std::string> names;
  for (auto& b : c.algebra.basis) {
    if (!names.insert(b.name).second) throw CatalogError(c.algebra.id, "basis", "duplicate name " + b.name);
    if (Expr::symbol(b.name, true).symbol_kind() != SymbolKind::parameter)
      throw CatalogError(c.algebra.id, "basis", "basis name must be a plain identifier: " + b.name);
    (void)parse_vf(c.algebra.id, "basis." + b.name, b.field);
  }
  for (auto& r : c.algebra.relations) {
    std::set<std::string> params;
    if (!names.count(r.left) || !names.count(r.right))
      throw CatalogError(c.algebra.id, "relations", "unknown basis element in [" + r.left + ", " + r.right + "]");
    if (r.result != "0") validate_combination(c.algebra.id, r.result, names, params);
  }

  for (auto& s : c.subalgebras) {
    unique(s.id);
    std::set<std::string> params;
    for (auto& g : s.generators) validate_combination(s.id, g, names, params);
    for (auto& p : params) {
      if (!s.samples.count(p)) throw CatalogError(s.id, "samples", "no sample values for parameter '" + p + "'");
    }
    auto cons = parse_constraints(s.id, s.constraints);
    for (auto& [p, values] : s.samples) {
      for (auto& v : values) {
        auto parsed = parse_rational(v);
        if (!parsed) throw CatalogError(s.id, "samples." + p, "not an exact rational: " + v);
        const Rational q = *parsed;
        for (auto& con : cons) {
          auto ok = con.holds_exact({{p, q}});
          if (ok && !*ok) throw CatalogError(s.id, "samples." + p, v + " violates " + con.text);
        }
      }
    }
  }

  for (auto& r : c.reductions) {
    unique(r.id);
    validate_pde_ref(c, r.pde, r.id);
    std::set<std::string> params;
    for (auto& g : r.generators) validate_combination(r.id, g, names, params);
    validate_omegas(r);
    (void)parse_field(r.id, "ansatz", r.ansatz);
    (void)parse_field(r.id, "expected_reduced", r.expected_reduced);
    for (auto& v : r.alternatives) {
      ReductionSpec tmp = r;
      tmp.omegas = v.omegas;
      validate_omegas(tmp);
      (void)parse_field(r.id, "alternatives.ansatz", v.ansatz);
      if (!v.expected_reduced.empty()) (void)parse_field(r.id, "alternatives.expected_reduced", v.expected_reduced);
    }
    for (auto& l : r.lifts) (void)parse_field(r.id, "lifts", l);
  }

  for (auto& s : c.solutions) {
    unique(s.id);
    validate_pde_ref(c, s.pde, s.id);
    auto check_u = [&](const std::string& text, const char* field) {
      Expr u = parse_field(s.id, field, text);
      for (auto k : {SymbolKind::dependent, SymbolKind::jet, SymbolKind::reduction, SymbolKind::reduction_jet}) {
        if (contains_kind(u, k)) throw CatalogError(s.id, field, "solution must be explicit in (t, x, y)");
      }
      if (contains_apply(u)) throw CatalogError(s.id, field, "solution must not contain opaque functions");
    };
    check_u(s.u_expr, "u");
    for (auto& a : s.alternatives) check_u(a.u_expr, "alternatives.u");
    (void)parse_constraints(s.id, s.domain);
    if (!s.reduction.empty() && !c.find_reduction(s.reduction))
      throw CatalogError(s.id, "reduction", "unknown reduction '" + s.reduction + "'");
  }

  for (auto& p : c.probes) {
    unique(p.id);
    validate_pde_ref(c, p.source, p.id);
    validate_pde_ref(c, p.target, p.id);
  }
}

}  // namespace

PdeInstance ClassificationEntry::instance() const {
  PdeInstance p = PdeInstance::make(f1, f2.empty() ? "f2(u)" : f2, y_sign);
  p.label = id;
  for (auto& c : constraints) p.constraints.push_back(parse_constraint(c));
  return p;
}

std::vector<std::string> ClassificationEntry::parameters() const {
  std::set<std::string> used;
  add_parameters(used, parse(f1));
  if (!f2.empty()) add_parameters(used, parse(f2));
  for (auto& g : generators) add_field_parameters(used, VectorField::parse(g.field));
  return {used.begin(), used.end()};
}

const ClassificationEntry* Catalog::find_entry(std::string_view id) const {
  for (auto* table : {&f1_forms, &f2_forms, &classification, &mappings, &canonical}) {
    for (auto& e : *table) {
      if (e.id == id) return &e;
    }
  }
  return nullptr;
}

const ReductionSpec* Catalog::find_reduction(std::string_view id) const {
  for (auto& r : reductions) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

PdeInstance Catalog::resolve(const PdeRef& ref) const {
  if (!ref.ref.empty()) {
    if (ref.ref == algebra.id) return resolve(algebra.pde);
    auto* e = find_entry(ref.ref);
    if (!e) throw CatalogError(ref.ref, "pde", "unknown reference");
    return e->instance();
  }
  PdeInstance p = PdeInstance::make(ref.f1, ref.f2, ref.y_sign);
  for (auto& c : ref.constraints) p.constraints.push_back(parse_constraint(c));
  return p;
}

std::optional<std::string> Catalog::show(std::string_view id) const {
  if (auto* e = find_entry(id)) return write_entry(*e).dump(2);
  if (id == algebra.id) return write_algebra(algebra).dump(2);
  for (auto& s : subalgebras) {
    if (s.id == id) return write_subalgebra(s).dump(2);
  }
  for (auto& s : solutions) {
    if (s.id == id) return write_solution(s).dump(2);
  }
  for (auto& r : reductions) {
    if (r.id == id) return write_reduction(r).dump(2);
  }
  for (auto& p : probes) {
    if (p.id == id) return write_probe(p).dump(2);
  }
  return std::nullopt;
}

std::vector<std::string> Catalog::ids() const {
  std::vector<std::string> out;
  for (auto* table : {&f1_forms, &f2_forms, &classification, &mappings, &canonical}) {
    for (auto& e : *table) out.push_back(e.id);
  }
  out.push_back(algebra.id);
  for (auto& s : subalgebras) out.push_back(s.id);
  for (auto& s : solutions) out.push_back(s.id);
  for (auto& r : reductions) out.push_back(r.id);
  for (auto& p : probes) out.push_back(p.id);
  return out;
}

Catalog parse_catalog(std::string_view text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const std::exception& ex) {
    throw CatalogError("", "", std::string("invalid JSON: ") + ex.what());
  }
  if (!root.is_object()) throw CatalogError("", "", "catalog must be a JSON object");
  Catalog c;
  {
    Reader r(root, "");
    c.schema_version = r.str("schema_version", true);
    c.version = r.str("version");
  }
  if (c.schema_version != kSchemaVersion)
    throw CatalogError("", "schema_version", "expected \"" + std::string(kSchemaVersion) + "\", got \"" + c.schema_version + "\"");
  auto tables = root.find("tables");
  if (tables == root.end() || !tables->is_object()) throw CatalogError("", "tables", "missing section");
  auto section = [&](const char* name) {
    return read_array<ClassificationEntry>(*tables, name, [&](const ordered_json& j) { return read_entry(j, name); });
  };
  c.f1_forms = section("f1_forms");
  c.f2_forms = section("f2_forms");
  c.classification = section("classification");
  c.mappings = section("mappings");
  c.canonical = section("canonical");

  auto alg = root.find("algebra");
  if (alg == root.end()) throw CatalogError("", "algebra", "missing section");
  {
    Reader r(*alg, id_of(*alg, "algebra"));
    c.algebra.id = r.id();
    c.algebra.pde = read_pde(r.child("pde"), r.id(), "pde");
    c.algebra.printed = r.str("printed");
    auto* basis = r.child("basis");
    if (!basis || !basis->is_array()) throw CatalogError(r.id(), "basis", "missing required field");
    for (auto& b : *basis) {
      Reader br(b, r.id());
      c.algebra.basis.push_back({br.str("name", true), br.str("field", true)});
    }
    if (auto* rel = r.child("relations")) {
      for (auto& x : *rel) {
        Reader xr(x, r.id());
        c.algebra.relations.push_back({xr.str("left", true), xr.str("right", true), xr.str("result", true)});
      }
    }
  }

  c.subalgebras = read_array<SubalgebraSpec>(root, "subalgebras", [](const ordered_json& j) {
    Reader r(j, id_of(j, "subalgebras"));
    SubalgebraSpec s;
    s.id = r.id();
    s.list = r.str("list", true);
    s.generators = r.strings("generators");
    s.constraints = r.strings("constraints");
    s.printed = r.str("printed");
    if (auto* samples = r.child("samples")) {
      for (auto& [k, v] : samples->items()) {
        if (!v.is_array()) throw CatalogError(s.id, "samples", "expected arrays of values");
        for (auto& x : v) {
          if (!x.is_string()) throw CatalogError(s.id, "samples", "sample values are strings");
          s.samples[k].push_back(x.get<std::string>());
        }
      }
    }
    if (s.generators.empty()) throw CatalogError(s.id, "generators", "missing required field");
    return s;
  });

  c.solutions = read_array<ExactSolution>(root, "solutions", [](const ordered_json& j) {
    Reader r(j, id_of(j, "solutions"));
    ExactSolution s;
    s.id = r.id();
    s.pde = read_pde(r.child("pde"), s.id, "pde");
    s.u_expr = r.str("u", true);
    s.domain = r.strings("domain");
    if (auto* alts = r.child("alternatives")) {
      for (auto& a : *alts) {
        Reader ar(a, s.id);
        s.alternatives.push_back({ar.str("u", true), ar.str("note")});
      }
    }
    s.reduction = r.str("reduction");
    s.phi = r.str("phi");
    s.notes = r.str("notes");
    s.printed = r.str("printed");
    return s;
  });

  c.reductions = read_array<ReductionSpec>(root, "reductions", [](const ordered_json& j) {
    Reader r(j, id_of(j, "reductions"));
    ReductionSpec s;
    s.id = r.id();
    s.pde = read_pde(r.child("pde"), s.id, "pde");
    s.generators = r.strings("generators");
    s.omegas = r.strings("omegas");
    s.ansatz = r.str("ansatz", true);
    s.expected_reduced = r.str("expected_reduced", true);
    s.constraints = r.strings("constraints");
    if (auto* alts = r.child("alternatives")) {
      for (auto& a : *alts) {
        Reader ar(a, s.id);
        s.alternatives.push_back({ar.strings("omegas"), ar.str("ansatz", true), ar.str("expected_reduced"), ar.str("note")});
      }
    }
    s.lifts = r.strings("lifts");
    s.notes = r.str("notes");
    s.printed = r.str("printed");
    return s;
  });

  c.probes = read_array<ProbeSpec>(root, "probes", [](const ordered_json& j) {
    Reader r(j, id_of(j, "probes"));
    ProbeSpec p;
    p.id = r.id();
    p.source = read_pde(r.child("source"), p.id, "source");
    p.target = read_pde(r.child("target"), p.id, "target");
    p.claim = r.str("claim");
    p.transform = read_map(r.child("transform"), p.id);
    p.notes = r.str("notes");
    p.printed = r.str("printed");
    return p;
  });

  validate(c);
  return c;
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("", "", "cannot open catalog file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

std::string serialize(const Catalog& c) {
  ordered_json root;
  root["schema_version"] = c.schema_version;
  put(root, "version", c.version);
  ordered_json tables;
  auto section = [&](const char* name, const std::vector<ClassificationEntry>& v) {
    ordered_json a = ordered_json::array();
    for (auto& e : v) a.push_back(write_entry(e));
    tables[name] = a;
  };
  section("f1_forms", c.f1_forms);
  section("f2_forms", c.f2_forms);
  section("classification", c.classification);
  section("mappings", c.mappings);
  section("canonical", c.canonical);
  root["tables"] = tables;
  root["algebra"] = write_algebra(c.algebra);
  auto array = [&](const char* name, const auto& v, auto fn) {
    ordered_json a = ordered_json::array();
    for (auto& e : v) a.push_back(fn(e));
    root[name] = a;
  };
  array("subalgebras", c.subalgebras, write_subalgebra);
  array("solutions", c.solutions, write_solution);
  array("reductions", c.reductions, write_reduction);
  array("probes", c.probes, write_probe);
  return root.dump(2) + "\n";
}

std::vector<VectorField> basis_fields(const AlgebraSpec& algebra) {
  std::vector<VectorField> out;
  for (auto& b : algebra.basis) out.push_back(VectorField::parse(b.field));
  return out;
}

VectorField algebra_element(const AlgebraSpec& algebra, std::string_view combination, const Bindings& params) {
  Expr e = substitute(parse(combination), params);
  VectorField out = VectorField::from({Expr(0), Expr(0), Expr(0), Expr(0)});
  for (auto& b : algebra.basis) {
    Expr c = differentiate(e, b.name);
    if (!c.is_zero_literal()) out = out + c * VectorField::parse(b.field);
  }
  return out;
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("KOLMOGOROV_CATALOG"); env && *env) return env;
  return KOLMO_DEFAULT_CATALOG;
}

}  // namespace kolmo
