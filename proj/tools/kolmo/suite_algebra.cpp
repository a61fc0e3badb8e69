#include "suites.hpp"

#include "kolmo/expr/parse.hpp"
#include "kolmo/symmetry/algebra.hpp"
#include "kolmo/symmetry/prolongation.hpp"

#include <stdexcept>

namespace kolmo::cli {

namespace {

std::vector<Rational> coords_of(const AlgebraSpec& a, const std::string& combination) {
  std::vector<Rational> c(a.basis.size(), Rational(0));
  if (combination == "0") return c;
  Expr e = parse(combination);
  for (std::size_t k = 0; k < a.basis.size(); ++k) {
    Expr d = differentiate(e, a.basis[k].name);
    if (!d.is_number()) throw std::invalid_argument("non-constant structure constant in " + combination);
    c[k] = d.value();
  }
  return c;
}

std::vector<std::string> names_of(const AlgebraSpec& a) {
  std::vector<std::string> n;
  for (auto& b : a.basis) n.push_back(b.name);
  return n;
}

bool zero_field(const VectorField& X, std::uint64_t seed) {
  for (auto& c : X.coefficients()) {
    if (!is_zero(c, zero_config(seed)).zero) return false;
  }
  return true;
}

}  // namespace

Report verify_algebra(const Catalog& catalog, const SuiteOptions& o) {
  const AlgebraSpec& a = catalog.algebra;
  auto basis = basis_fields(a);
  auto names = names_of(a);
  PdeInstance pde = catalog.resolve(a.pde);
  const std::size_t n = basis.size();
  Report rep;

  for (std::size_t i = 0; i < n; ++i) {
    auto v = is_zero(invariance_residual(basis[i], pde), zero_config(item_seed(o.seed, names[i]), pde.constraints));
    rep.add({"symmetry." + names[i], v.zero ? Verdict::pass : Verdict::fail,
             json{{"field", a.basis[i].field}, {"residual", witness_json(v)}}});
  }

  // printed relations, both orientations
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> expected;
  auto index = [&](const std::string& s) {
    for (std::size_t k = 0; k < n; ++k) {
      if (names[k] == s) return k;
    }
    throw std::invalid_argument("unknown basis element " + s);
  };
  for (auto& r : a.relations) {
    auto c = coords_of(a, r.result);
    std::size_t i = index(r.left), j = index(r.right);
    expected[{i, j}] = c;
    for (auto& x : c) x = -x;
    expected[{j, i}] = c;
  }

  int nonzero = 0, commuting = 0, matched = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Item it;
      it.id = "[" + names[i] + ", " + names[j] + "]";
      std::vector<Rational> zero(n, Rational(0));
      auto want = expected.contains({i, j}) ? expected[{i, j}] : zero;
      try {
        auto got = coordinates(commutator(basis[i], basis[j]), basis);
        bool ok = got == want;
        it.verdict = ok ? Verdict::pass : Verdict::fail;
        it.details = {{"computed", format_combination(got, names)}, {"expected", format_combination(want, names)}};
        if (got != zero) ++nonzero; else ++commuting;
        matched += ok && want != zero;
      } catch (const NotInSpanError& e) {
        it.verdict = Verdict::fail;
        it.details = {{"error", e.what()}};
      }
      rep.add(std::move(it));
    }
  }

  int jacobi_ok = 0, triples = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        ++triples;
        const auto &X = basis[i], &Y = basis[j], &Z = basis[k];
        VectorField J = commutator(X, commutator(Y, Z)) + commutator(Y, commutator(Z, X)) + commutator(Z, commutator(X, Y));
        std::string id = "jacobi(" + names[i] + ", " + names[j] + ", " + names[k] + ")";
        bool ok = zero_field(J, item_seed(o.seed, id));
        jacobi_ok += ok;
        rep.add({id, ok ? Verdict::pass : Verdict::fail, json::object()});
      }
    }
  }
  rep.extra["algebra"] = {{"nonzero_relations", nonzero},
                          {"printed_relations_matched", matched},
                          {"commuting_pairs", commuting},
                          {"jacobi_triples", triples},
                          {"jacobi_vanishing", jacobi_ok}};
  return rep;
}

Report verify_subalgebras(const Catalog& catalog, const SuiteOptions& o) {
  const AlgebraSpec& a = catalog.algebra;
  NamedBasis ambient{names_of(a), basis_fields(a)};
  if (o.list && *o.list != 1 && *o.list != 2) throw std::invalid_argument("--list must be 1 or 2");
  std::vector<const SubalgebraSpec*> picked;
  for (auto& s : catalog.subalgebras) {
    int dim = s.list == "one-dimensional" ? 1 : 2;
    if (!o.list || *o.list == dim) picked.push_back(&s);
  }

  std::vector<Item> items(picked.size());
  parallel_for(picked.size(), o.threads, [&](std::size_t k) {
    const SubalgebraSpec& s = *picked[k];
    std::size_t want_dim = s.list == "one-dimensional" ? 1 : 2;
    // every combination of the listed sample values
    std::vector<std::map<std::string, std::string>> combos{{}};
    for (auto& [p, values] : s.samples) {
      std::vector<std::map<std::string, std::string>> next;
      for (auto& c : combos) {
        for (auto& v : values) {
          auto d = c;
          d[p] = v;
          next.push_back(std::move(d));
        }
      }
      combos = std::move(next);
    }
    Item it;
    it.id = s.id;
    json runs = json::array();
    bool ok = true;
    for (auto& c : combos) {
      std::vector<VectorField> gens;
      for (auto& g : s.generators) gens.push_back(algebra_element(a, g, to_bindings(c)));
      auto v = is_subalgebra(gens, ambient);
      bool good = v.closed && v.dimension == want_dim;
      ok = ok && good;
      json r{{"sample", binding_label(c)}, {"closed", v.closed}, {"dimension", v.dimension}};
      if (!v.closed) r["defect"] = format_combination(v.defect, ambient.names);
      runs.push_back(std::move(r));
    }
    it.verdict = ok ? Verdict::pass : Verdict::fail;
    it.details = {{"generators", s.generators}, {"runs", runs}};
    items[k] = std::move(it);
  });

  Report rep;
  for (auto& i : items) rep.add(std::move(i));

  // negative control: <X2, X5> is not closed, the defect is X4
  if (!o.list || *o.list == 2) {
    std::vector<VectorField> gens{algebra_element(a, "X2"), algebra_element(a, "X5")};
    auto v = is_subalgebra(gens, ambient);
    std::string defect = v.closed ? "" : format_combination(v.defect, ambient.names);
    bool ok = !v.closed && defect == "X4";
    rep.add({"control.<X2, X5>", ok ? Verdict::pass : Verdict::fail,
             json{{"closed", v.closed}, {"defect", defect}, {"expected", "not closed, defect X4"}}});
  }
  return rep;
}

}  // namespace kolmo::cli
