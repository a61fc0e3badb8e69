#include "kolmo/reduction/reduction.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/expr/render.hpp"
#include "kolmo/expr/symbol.hpp"

#include <algorithm>
#include <cmath>

namespace kolmo {

namespace {

const char* const kOmega[2] = {"w1", "w2"};

// phi(a, b) with derivative orders -> jet symbol phi_w1.. ; everything else rebuilt.
Expr jets_for_applies(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::number:
    case NodeKind::symbol:
      return e;
    case NodeKind::apply: {
      if (e.name() != "phi") return e;
      std::array<int, 2> idx{0, 0};
      for (std::size_t i = 0; i < e.orders().size(); ++i) idx[i] = e.orders()[i];
      if (idx[0] + idx[1] > kMaxPhiJetOrder)
        throw ReductionError("ansatz produces phi derivatives beyond order " + std::to_string(kMaxPhiJetOrder));
      return Expr::symbol(phi_jet_name(idx));
    }
    case NodeKind::func:
      return Expr::func(e.fn(), jets_for_applies(e.ops()[0]));
    case NodeKind::pow:
      return pow(jets_for_applies(e.ops()[0]), jets_for_applies(e.ops()[1]));
    case NodeKind::mul: {
      std::vector<Expr> f;
      for (auto& o : e.ops()) f.push_back(jets_for_applies(o));
      return Expr::mul(std::move(f));
    }
    case NodeKind::add: {
      std::vector<Expr> t;
      for (auto& o : e.ops()) t.push_back(jets_for_applies(o));
      return Expr::add(std::move(t));
    }
  }
  return e;
}

bool is_jet_symbol(const Expr& e) {
  return e.kind() == NodeKind::symbol && e.symbol_kind() == SymbolKind::reduction_jet;
}

int jet_order(const Expr& monomial) {
  int best = -1;
  for (auto& s : free_symbols(monomial)) {
    if (s == "phi") best = std::max(best, 0);
    else if (s.rfind("phi_", 0) == 0) {
      auto idx = phi_jet_index(s);
      best = std::max(best, idx[0] + idx[1]);
    }
  }
  return best;
}

// Solve the affine invariants for some of (t, x, y).
struct Section {
  Bindings bind;
  std::vector<std::string> free;
};

Section affine_section(const std::vector<Expr>& omegas) {
  std::vector<std::string> vars{"t", "y", "x"};
  std::vector<Expr> work = omegas;
  Section s;
  std::vector<std::pair<std::string, Expr>> solved;
  for (std::size_t i = 0; i < work.size(); ++i) {
    Expr w = work[i];
    for (auto& [v, val] : solved) w = substitute(w, v, val);
    w = expand(w);
    std::string pivot;
    Expr coeff;
    // prefer a numeric coefficient
    for (int pass = 0; pass < 2 && pivot.empty(); ++pass) {
      for (auto& v : vars) {
        Expr c = expand(differentiate(w, v));
        for (auto& other : {"t", "x", "y"}) {
          if (!expand(differentiate(c, other)).is_zero_literal())
            throw ReductionError("invariant is not affine in (t, x, y): " + render(omegas[i]));
        }
        if (c.is_zero_literal()) continue;
        if (pass == 0 && c.kind() != NodeKind::number) continue;
        pivot = v;
        coeff = c;
        break;
      }
    }
    if (pivot.empty()) throw ReductionError("invariant does not depend on the remaining variables: " + render(omegas[i]));
    Expr rest = expand(w - coeff * sym(pivot));
    Expr value = (sym(kOmega[i]) - rest) / coeff;
    for (auto& [v, val] : solved) val = substitute(val, pivot, value);
    solved.emplace_back(pivot, value);
    vars.erase(std::find(vars.begin(), vars.end(), pivot));
  }
  for (auto& [v, val] : solved) s.bind.bind(v, val);
  s.free = vars;
  return s;
}

ZeroTestConfig with_constraints(ZeroTestConfig cfg, const std::vector<Constraint>& extra) {
  cfg.sampling.constraints.insert(cfg.sampling.constraints.end(), extra.begin(), extra.end());
  return cfg;
}

}  // namespace

InvariantVerdict verify_invariants(const VectorField& X, const std::vector<Expr>& invariants, const ZeroTestConfig& config) {
  InvariantVerdict v;
  v.pass = true;
  for (auto& I : invariants) {
    v.per_invariant.push_back(is_zero(X.apply(I), config));
    v.pass = v.pass && v.per_invariant.back().zero;
  }
  return v;
}

Ansatz Ansatz::parse(const std::vector<std::string>& omegas, std::string_view u, const std::vector<std::string>& constraints) {
  Ansatz a;
  for (auto& w : omegas) a.omegas.push_back(kolmo::parse(w));
  a.u = kolmo::parse(u);
  for (auto& c : constraints) a.constraints.push_back(parse_constraint(c));
  return a;
}

Expr Ansatz::in_coordinates() const {
  Bindings b;
  for (std::size_t i = 0; i < omegas.size() && i < 2; ++i) b.bind(kOmega[i], omegas[i]);
  return substitute(u, b);
}

ZeroVerdict ansatz_invariant(const VectorField& X, const Ansatz& ansatz, const ZeroTestConfig& config) {
  const Expr A = ansatz.in_coordinates();
  Expr r = substitute(X.eta, "u", A) - X.apply(A);
  return is_zero(r, with_constraints(config, ansatz.constraints));
}

ReducedEquation reduce(const PdeInstance& pde, const Ansatz& ansatz, const ZeroTestConfig& config) {
  if (ansatz.omegas.empty() || ansatz.omegas.size() > 2) throw ReductionError("expected one or two invariants");
  ReducedEquation out;
  out.raw = jets_for_applies(pde.residual_of(ansatz.in_coordinates()));

  auto terms = collect(out.raw, is_jet_symbol);
  const ZeroTestConfig cfg = with_constraints(config, ansatz.constraints);
  // drop identically vanishing groups
  std::vector<std::pair<Expr, Expr>> kept;
  for (auto& [m, c] : terms) {
    if (!is_zero(c, cfg).zero) kept.emplace_back(m, c);
  }
  if (kept.empty()) throw ReductionError("the ansatz satisfies the equation identically");
  if (std::all_of(kept.begin(), kept.end(), [](auto& t) { return jet_order(t.first) < 0; }))
    throw ReductionError("residual does not involve phi");

  std::size_t lead = 0;
  for (std::size_t i = 1; i < kept.size(); ++i) {
    int a = jet_order(kept[i].first), b = jet_order(kept[lead].first);
    if (a > b) lead = i;
  }
  out.factor = kept[lead].second;
  Section sec = affine_section(ansatz.omegas);

  Expr reduced;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    Expr ratio = i == lead ? Expr(1) : substitute(kept[i].second / out.factor, sec.bind);
    for (auto& v : sec.free) {
      auto dv = is_zero(differentiate(ratio, v), cfg);
      if (!dv.zero) {
        std::map<std::string, double> p1 = dv.witness ? dv.witness->point : std::map<std::string, double>{};
        std::map<std::string, double> p2 = p1;
        p2[v] += 0.5;
        throw ReductionError("coefficient of " + render(kept[i].first) + " depends on " + v +
                                 " at fixed invariants; the ansatz does not reduce the equation",
                             p1, p2);
      }
    }
    if (!sec.free.empty()) {
      Expr pinned;
      bool ok = false;
      for (const Rational& value : {Rational(0), Rational(1, 3), Rational(2)}) {
        Bindings fix;
        for (auto& v : sec.free) fix.bind(v, Expr(value));
        pinned = expand(substitute(ratio, fix));
        try {
          ok = is_zero(ratio - pinned, cfg).zero;
        } catch (const std::exception&) {
          ok = false;
        }
        if (ok) break;
      }
      if (!ok) throw ReductionError("could not eliminate " + sec.free.front() + " from the reduced coefficients");
      ratio = pinned;
    }
    reduced += ratio * kept[i].first;
  }
  out.reduced = reduced;

  // Factor check: raw / (factor * reduced(omega)) must be 1 at sampled points
  // with independent jet values.
  {
    Bindings back;
    for (std::size_t i = 0; i < ansatz.omegas.size(); ++i) back.bind(kOmega[i], ansatz.omegas[i]);
    Expr rebuilt = out.factor * substitute(out.reduced, back);
    auto check = is_zero(out.raw - rebuilt, cfg);
    if (!check.zero) {
      std::map<std::string, double> p1 = check.witness ? check.witness->point : std::map<std::string, double>{};
      throw ReductionError("residual is not factor(t, x, y) times a function of the invariants", p1);
    }
  }
  return out;
}

MatchVerdict match_reduced(const Expr& got, const Expr& expected, const ZeroTestConfig& config) {
  if (is_zero(expected, config).zero) throw std::invalid_argument("expected reduced equation is identically zero");
  MatchVerdict m;
  auto exp_terms = collect(expected, is_jet_symbol);
  auto got_terms = collect(got, is_jet_symbol);
  std::size_t lead = 0;
  for (std::size_t i = 1; i < exp_terms.size(); ++i) {
    if (jet_order(exp_terms[i].first) > jet_order(exp_terms[lead].first)) lead = i;
  }
  const Expr& key = exp_terms[lead].first;
  Expr got_coeff(0);
  for (auto& [mono, c] : got_terms) {
    if (compare(mono, key) == 0) got_coeff = c;
  }
  m.lambda = got_coeff / exp_terms[lead].second;
  if (got_coeff.is_zero_literal() || is_zero(got_coeff, config).zero) return m;

  Program prog = Program::compile({m.lambda});
  Sampler sampler(prog.variables(), config.sampling, false, config.exclusion);
  Rng rng(config.seed ^ 0x3a7ULL);
  std::vector<double> out(1);
  Program::Options opts;
  opts.singular_guard = config.singular_guard;
  for (int i = 0; i < 1000; ++i) {
    auto vals = sampler.draw(rng);
    if (!sampler.admissible(vals) || prog.run(vals, out, opts) != EvalStatus::ok) continue;
    m.lambda_value = out[0];
    break;
  }
  m.constant = !depends_on(m.lambda, "w1") && !depends_on(m.lambda, "w2");
  if (!m.constant) {
    m.constant = is_zero(differentiate(m.lambda, "w1"), config).zero && is_zero(differentiate(m.lambda, "w2"), config).zero;
  }
  m.verdict = is_zero(got - m.lambda * expected, config);
  m.pass = m.verdict.zero;
  return m;
}

std::optional<Expr> phi_from_solution(const Ansatz& ansatz, const Expr& u) {
  if (ansatz.u.kind() != NodeKind::apply || ansatz.u.name() != "phi") return std::nullopt;
  for (auto& o : ansatz.u.orders()) {
    if (o != 0) return std::nullopt;
  }
  for (std::size_t i = 0; i < ansatz.u.ops().size(); ++i) {
    if (!ansatz.u.ops()[i].is_symbol(kOmega[i])) return std::nullopt;
  }
  Section sec = affine_section(ansatz.omegas);
  Expr phi = substitute(u, sec.bind);
  if (!sec.free.empty()) {
    Bindings fix;
    for (auto& v : sec.free) fix.bind(v, Expr(0));
    phi = substitute(phi, fix);
  }
  return phi;
}

SolutionVerdict solution_residual(const PdeInstance& pde, const Expr& u, const std::vector<Constraint>& domain,
                                  const ZeroTestConfig& config) {
  SolutionVerdict s;
  s.residual = pde.residual_of(u);
  ZeroTestConfig cfg = with_constraints(config, domain);
  cfg = with_constraints(cfg, pde.constraints);
  auto v = is_zero(s.residual, cfg);
  s.zero = v.zero;
  s.witness = v.witness;

  Program prog = Program::compile({s.residual});
  Sampler sampler(prog.variables(), cfg.sampling, needs_positive_u(s.residual), cfg.exclusion);
  Rng rng(cfg.seed ^ 0x5eedULL);
  std::vector<double> out(1);
  Program::Options opts;
  opts.singular_guard = cfg.singular_guard;
  int n = 0;
  for (int i = 0; i < 2000 && n < cfg.points; ++i) {
    auto vals = sampler.draw(rng);
    if (!sampler.admissible(vals) || prog.run(vals, out, opts) != EvalStatus::ok) continue;
    s.max_abs = std::max(s.max_abs, std::abs(out[0]));
    ++n;
  }
  return s;
}

Expr lift(const Ansatz& ansatz, const Expr& phi) {
  std::vector<std::string> params;
  for (std::size_t i = 0; i < ansatz.omegas.size(); ++i) params.emplace_back(kOmega[i]);
  Bindings b;
  b.bind_function("phi", Lambda{params, phi});
  return substitute(ansatz.in_coordinates(), b);
}

Expr reduced_on(const Expr& reduced, const Expr& phi) {
  Bindings b;
  b.bind("phi", phi);
  // all jets up to order 2
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; i + j <= 2; ++j) {
      if (i + j == 0) continue;
      Expr d = phi;
      if (i) d = differentiate(d, "w1", i);
      if (j) d = differentiate(d, "w2", j);
      b.bind(phi_jet_name({i, j}), d);
    }
  }
  return substitute(reduced, b);
}

}  // namespace kolmo
