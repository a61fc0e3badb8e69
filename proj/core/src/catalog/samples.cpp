#include "kolmo/catalog/catalog.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/expr/zero_test.hpp"

#include <algorithm>
#include <set>

namespace kolmo {

namespace {

bool is_sign_domain(const std::vector<Rational>& values) {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v == -1 || v == 0 || v == 1; });
}

using Point = std::map<std::string, Rational>;

std::vector<Point> product(const std::vector<std::pair<std::string, std::vector<Rational>>>& domains) {
  std::vector<Point> out{Point{}};
  for (auto& [name, values] : domains) {
    std::vector<Point> next;
    for (auto& p : out) {
      for (auto& v : values) {
        Point q = p;
        q[name] = v;
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<std::map<std::string, std::string>> sample_bindings(const std::vector<std::string>& constraint_texts,
                                                                const std::vector<std::string>& parameters,
                                                                std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("sample budget must be at least 1");
  std::vector<Constraint> constraints;
  for (auto& t : constraint_texts) constraints.push_back(parse_constraint(t));

  std::vector<std::pair<std::string, std::vector<Rational>>> signs, others;
  for (auto& p : parameters) {
    std::optional<std::vector<Rational>> domain;
    for (auto& c : constraints) {
      if (c.kind == Constraint::Kind::member && c.symbol == p) domain = c.values;
      if (auto fixed = c.fixed_value(); fixed && fixed->first == p) domain = std::vector<Rational>{fixed->second};
    }
    if (!domain) continue;
    (is_sign_domain(*domain) ? signs : others).emplace_back(p, *domain);
  }

  auto admissible = [&](const Point& p) {
    for (auto& c : constraints) {
      if (c.kind != Constraint::Kind::relation) continue;
      auto ok = c.holds_exact(p);
      if (ok && !*ok) return false;
    }
    return true;
  };

  auto S = product(signs), O = product(others);
  Rng rng(seed);
  for (std::size_t i = O.size(); i > 1; --i) std::swap(O[i - 1], O[rng.index(i)]);

  // Combined points, then fronted so that every sign combination and every
  // exponent combination shows up as early as the budget allows.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < S.size() * O.size(); ++k) pairs.emplace_back(k % S.size(), (k / S.size() + k) % O.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<Point> ordered, rest;
  std::set<std::size_t> seen_s, seen_o;
  for (auto& [s, o] : pairs) {
    if (!seen.insert({s, o}).second) continue;
    Point p = S[s];
    for (auto& [k, v] : O[o]) p[k] = v;
    if (!admissible(p)) continue;
    if (!seen_s.count(s) || !seen_o.count(o)) {
      seen_s.insert(s);
      seen_o.insert(o);
      ordered.push_back(std::move(p));
    } else {
      rest.push_back(std::move(p));
    }
  }
  // pairs may miss some (s, o) combinations when the sizes share factors
  for (std::size_t s = 0; s < S.size(); ++s) {
    for (std::size_t o = 0; o < O.size(); ++o) {
      if (seen.count({s, o})) continue;
      Point p = S[s];
      for (auto& [k, v] : O[o]) p[k] = v;
      if (admissible(p)) rest.push_back(std::move(p));
    }
  }
  ordered.insert(ordered.end(), rest.begin(), rest.end());
  if (ordered.empty()) throw std::invalid_argument("parameter constraints are unsatisfiable");
  if (ordered.size() > budget) ordered.resize(budget);

  std::vector<std::map<std::string, std::string>> out;
  for (auto& p : ordered) {
    std::map<std::string, std::string> m;
    for (auto& [k, v] : p) m[k] = to_string(v);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<PdeInstance> expand_samples(const ClassificationEntry& entry, std::size_t budget, std::uint64_t seed) {
  auto bindings = sample_bindings(entry.constraints, entry.parameters(), budget, seed);
  std::vector<PdeInstance> out;
  PdeInstance base = entry.instance();
  for (auto& b : bindings) {
    Bindings sub;
    std::string label = entry.id;
    for (auto& [k, v] : b) {
      sub.bind(k, parse(v));
      label += " " + k + "=" + v;
    }
    PdeInstance p = base;
    p.f1 = substitute(base.f1, sub);
    p.f2 = substitute(base.f2, sub);
    p.label = label;
    // constraints on bound parameters are settled; keep the rest for sampling
    p.constraints.clear();
    for (auto& c : base.constraints) {
      bool bound = false;
      for (auto& s : c.symbols()) bound = bound || b.count(s);
      if (!bound) p.constraints.push_back(c);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace kolmo
