#include "suites.hpp"

#include "kolmo/expr/parse.hpp"
#include "kolmo/expr/render.hpp"
#include "kolmo/reduction/reduction.hpp"

#include <stdexcept>

namespace kolmo::cli {

namespace {

struct Attempt {
  bool ok = false;
  json j;
  std::optional<ReducedEquation> reduced;
};

Attempt try_reduce(const PdeInstance& pde, const std::vector<std::string>& omegas, const std::string& ansatz,
                   const std::string& expected, const std::vector<std::string>& constraints, std::uint64_t seed) {
  Attempt a;
  a.j = {{"omegas", omegas}, {"ansatz", ansatz}};
  try {
    auto an = Ansatz::parse(omegas, ansatz, constraints);
    auto cfg = zero_config(seed, an.constraints);
    auto red = reduce(pde, an, cfg);
    auto m = match_reduced(red.reduced, parse(expected), cfg);
    a.j["reduced"] = render(red.reduced);
    a.j["match"] = m.pass;
    a.j["lambda"] = render(m.lambda);
    a.j["lambda_constant"] = m.constant;
    if (!m.pass) a.j["witness"] = witness_json(m.verdict);
    a.ok = m.pass;
    a.reduced = red;
  } catch (const ReductionError& e) {
    a.j["error"] = e.what();
    a.j["witness_pair"] = {e.first, e.second};
  } catch (const std::exception& e) {
    a.j["error"] = e.what();
  }
  return a;
}

struct Outcome {
  Item item;
  std::vector<CompatibilityNote> notes;
};

Outcome check_reduction(const Catalog& catalog, const ReductionSpec& r, const SuiteOptions& o) {
  Outcome out;
  out.item.id = r.id;
  PdeInstance pde = catalog.resolve(r.pde);
  std::uint64_t seed = item_seed(o.seed, r.id);
  auto constraints = parse_constraints(r.constraints);
  auto cfg = zero_config(seed, constraints);
  json d;
  d["expected"] = r.expected_reduced;

  // every invariant and the ansatz surface are invariant under every generator
  bool inv_ok = true;
  json gens = json::array();
  Ansatz an = Ansatz::parse(r.omegas, r.ansatz, r.constraints);
  for (auto& g : r.generators) {
    VectorField X = algebra_element(catalog.algebra, g);
    auto iv = verify_invariants(X, an.omegas, cfg);
    auto av = ansatz_invariant(X, an, cfg);
    inv_ok = inv_ok && iv.pass && av.zero;
    gens.push_back({{"generator", g}, {"invariants", iv.pass}, {"ansatz", av.zero}});
  }
  d["generators"] = gens;

  Attempt main = try_reduce(pde, r.omegas, r.ansatz, r.expected_reduced, r.constraints, seed);
  d["derived"] = main.j;
  json variants = json::array();
  bool variant_ok = false;
  for (auto& v : r.alternatives) {
    Attempt a = try_reduce(pde, v.omegas, v.ansatz.empty() ? r.ansatz : v.ansatz,
                           v.expected_reduced.empty() ? r.expected_reduced : v.expected_reduced, r.constraints, seed);
    if (!v.note.empty()) a.j["note"] = v.note;
    variant_ok = variant_ok || a.ok;
    variants.push_back(a.j);
  }
  if (!variants.empty()) d["variants"] = variants;

  // closed-form phi: reduced equation and lifted solution
  bool lifts_ok = true;
  json lifts = json::array();
  for (auto& l : r.lifts) {
    json lj{{"phi", l}};
    if (!main.reduced) {
      lj["error"] = "no reduced equation";
      lifts_ok = false;
    } else {
      Expr phi = parse(l);
      auto on = is_zero(reduced_on(main.reduced->reduced, phi), cfg);
      auto lifted = lift(an, phi);
      auto sol = solution_residual(pde, lifted, constraints, cfg);
      lj["solves_reduced"] = on.zero;
      lj["lifted"] = render(lifted);
      lj["solves_pde"] = sol.zero;
      lifts_ok = lifts_ok && sol.zero;
    }
    lifts.push_back(std::move(lj));
  }
  if (!lifts.empty()) d["lifts"] = lifts;

  if (!inv_ok) {
    out.item.verdict = Verdict::fail;
  } else if (main.ok) {
    out.item.verdict = lifts_ok ? Verdict::pass : Verdict::fail;
  } else if (variant_ok) {
    out.item.verdict = Verdict::flagged;
    out.notes.push_back({r.id, "printed reduced equation reproduced only by an alternative invariant", d});
  } else {
    out.item.verdict = Verdict::fail;
    out.notes.push_back({r.id, "derived reduced equation differs from the printed one",
                         json{{"expected", r.expected_reduced}, {"derived", main.j}}});
  }
  out.item.details = std::move(d);
  return out;
}

Outcome check_solution(const Catalog& catalog, const ExactSolution& s, const SuiteOptions& o) {
  Outcome out;
  out.item.id = s.id;
  PdeInstance pde = catalog.resolve(s.pde);
  auto domain = parse_constraints(s.domain);
  auto cfg = zero_config(item_seed(o.seed, s.id), domain);
  const ReductionSpec* red = s.reduction.empty() ? nullptr : catalog.find_reduction(s.reduction);

  std::optional<ReducedEquation> reduced;
  std::optional<Ansatz> ansatz;
  if (red) {
    ansatz = Ansatz::parse(red->omegas, red->ansatz, red->constraints);
    try {
      reduced = reduce(pde, *ansatz, cfg);
    } catch (const std::exception&) {
      reduced.reset();
    }
  }
  auto assess = [&](const std::string& u_text) {
    json j{{"u", u_text}};
    Expr u = parse(u_text);
    auto v = solution_residual(pde, u, domain, cfg);
    j["zero"] = v.zero;
    j["max_abs"] = v.max_abs;
    if (v.witness) j["witness"] = {{"point", v.witness->point}, {"value", v.witness->value}};
    // the reduced ODE on the phi this candidate corresponds to
    if (reduced && ansatz) {
      if (auto phi = phi_from_solution(*ansatz, u)) {
        auto r = is_zero(reduced_on(reduced->reduced, *phi), cfg);
        j["reduced_residual_zero"] = r.zero;
      }
    }
    return std::pair{v.zero, j};
  };

  auto [ok, main] = assess(s.u_expr);
  json d{{"printed_form", main}};
  if (!s.notes.empty()) d["notes"] = s.notes;
  json alts = json::array();
  bool alt_ok = false;
  std::string passing;
  for (auto& a : s.alternatives) {
    auto [aok, aj] = assess(a.u_expr);
    aj["note"] = a.note;
    if (aok && passing.empty()) passing = a.u_expr;
    alt_ok = alt_ok || aok;
    alts.push_back(std::move(aj));
  }
  if (!alts.empty()) d["alternatives"] = alts;
  if (ok) {
    out.item.verdict = Verdict::pass;
  } else {
    out.item.verdict = alt_ok ? Verdict::flagged : Verdict::fail;
    json ev{{"printed", main}};
    if (!alts.empty()) ev["readings"] = alts;
    out.notes.push_back({s.id,
                         alt_ok ? "printed solution fails the equation; corrected reading " + passing + " passes"
                                : "printed solution fails the equation",
                         ev});
  }
  out.item.details = std::move(d);
  return out;
}

template <typename T, typename F>
Report fan_out(const std::vector<T>& specs, const SuiteOptions& o, F&& check) {
  std::vector<const T*> picked;
  for (auto& s : specs) {
    if (o.row.empty() || o.row == s.id) picked.push_back(&s);
  }
  if (picked.empty()) throw std::invalid_argument("no entry matches '" + o.row + "'");
  std::vector<Outcome> res(picked.size());
  parallel_for(picked.size(), o.threads, [&](std::size_t k) { res[k] = check(*picked[k]); });
  Report rep;
  for (auto& r : res) {
    rep.add(std::move(r.item));
    for (auto& n : r.notes) rep.notes.push_back(std::move(n));
  }
  return rep;
}

}  // namespace

Report verify_reductions(const Catalog& catalog, const SuiteOptions& o) {
  return fan_out(catalog.reductions, o, [&](const ReductionSpec& r) { return check_reduction(catalog, r, o); });
}

Report verify_solutions(const Catalog& catalog, const SuiteOptions& o) {
  return fan_out(catalog.solutions, o, [&](const ExactSolution& s) { return check_solution(catalog, s, o); });
}

}  // namespace kolmo::cli
