#include "kolmo/equivalence/probe.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/render.hpp"
#include "kolmo/expr/zero_test.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kolmo {

namespace {

// Linear form over (theta, nu, 1).
using Form = std::array<Rational, 3>;

Form operator*(const Rational& k, const Form& f) { return {k * f[0], k * f[1], k * f[2]}; }
Form operator+(const Form& a, const Form& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Form operator-(const Form& a, const Form& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Rational as_rational(const Expr& e, const std::string& what) {
  Expr x = expand(e);
  if (x.kind() != NodeKind::number) throw std::invalid_argument("probe: " + what + " is not constant: " + render(x));
  return x.value();
}

struct Solved {
  std::map<std::string, Form> values;
  std::vector<Form> leftovers;  // rows with no unknowns left
};

// Solves equations linear in `unknowns` whose right sides are forms in (th, nu, 1).
Solved solve_linear(const std::vector<Expr>& equations, const std::vector<std::string>& unknowns) {
  const std::size_t n = unknowns.size();
  std::vector<std::vector<Rational>> rows;
  for (const auto& eq : equations) {
    std::vector<Rational> row(n + 3);
    Expr rest = eq;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = as_rational(differentiate(eq, unknowns[j]), "coefficient of " + unknowns[j]);
      rest = substitute(rest, unknowns[j], Expr(0));
    }
    Expr th_c = differentiate(rest, "th"), nu_c = differentiate(rest, "nu");
    row[n] = -as_rational(th_c, "theta coefficient");
    row[n + 1] = -as_rational(nu_c, "nu coefficient");
    row[n + 2] = -as_rational(substitute(substitute(rest, "th", Expr(0)), "nu", Expr(0)), "constant");
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational k = rows[i][c];
      for (std::size_t j = 0; j < n + 3; ++j) rows[i][j] -= k * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivots.size() != n) throw std::invalid_argument("probe: linear system is underdetermined");
  Solved out;
  for (std::size_t i = 0; i < r; ++i) out.values[unknowns[pivots[i]]] = {rows[i][n], rows[i][n + 1], rows[i][n + 2]};
  for (std::size_t i = r; i < rows.size(); ++i) {
    Form f{-rows[i][n], -rows[i][n + 1], -rows[i][n + 2]};
    if (f[0] != 0 || f[1] != 0 || f[2] != 0) out.leftovers.push_back(f);
  }
  return out;
}

// Derivative of a form: theta -> dth, nu -> dnu, constants drop.
Form derive(const Form& f, const Form& dth, const Form& dnu) { return f[0] * dth + f[1] * dnu; }

std::vector<Expr> split_in_u(const Expr& e) {
  std::vector<Expr> out;
  for (auto& c : polynomial_coefficients(expand(e), "u")) out.push_back(expand(c));
  return out;
}

// Conditions at a fixed a1^2 = s and fixed eps values.
std::vector<Form> conditions_at(const Expr& f1, const Expr& f2, const Expr& F1, const Expr& F2, const Rational& s) {
  const Expr u = sym("u"), S(s);
  Bindings bar;
  bar.bind("u", sym("th") * u + sym("nu"));
  const Expr F1b = substitute(F1, bar), F2b = substitute(F2, bar);

  Solved st1 = solve_linear(split_in_u(sym("Yt") + sym("Yy") * f1 - S * F1b), {"Yt", "Yy"});
  std::vector<Form> conditions = st1.leftovers;
  const Form Lt = st1.values["Yt"], Ly = st1.values["Yy"];

  std::vector<Expr> eqs = split_in_u(sym("tht") * u + sym("nut") + (sym("thy") * u + sym("nuy")) * f1 + sym("th") * f2 -
                                     S * F2b);
  // d/dy Y_t = d/dt Y_y
  eqs.push_back(Expr(Lt[0]) * sym("thy") + Expr(Lt[1]) * sym("nuy") - Expr(Ly[0]) * sym("tht") -
                Expr(Ly[1]) * sym("nut"));
  Solved st2 = solve_linear(eqs, {"tht", "thy", "nut", "nuy"});
  conditions.insert(conditions.end(), st2.leftovers.begin(), st2.leftovers.end());
  const Form tht = st2.values["tht"], thy = st2.values["thy"], nut = st2.values["nut"], nuy = st2.values["nuy"];

  conditions.push_back(derive(tht, thy, nuy) - derive(thy, tht, nut));
  conditions.push_back(derive(nut, thy, nuy) - derive(nuy, tht, nut));
  return conditions;
}

// Lagrange-free fit: solve the Vandermonde system exactly, then check the rest.
std::optional<SPolynomial> fit(const std::vector<Rational>& s, const std::vector<Rational>& v) {
  for (std::size_t deg = 0; deg + 2 <= s.size() && deg <= 4; ++deg) {
    const std::size_t k = deg + 1;
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
      Rational p = 1;
      for (std::size_t j = 0; j < k; ++j) {
        a[i][j] = p;
        p *= s[i];
      }
      a[i][k] = v[i];
    }
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = c;
      while (a[p][c] == 0) ++p;
      std::swap(a[p], a[c]);
      for (std::size_t i = 0; i < k; ++i) {
        if (i == c) continue;
        Rational f = a[i][c] / a[c][c];
        for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[c][j];
      }
    }
    SPolynomial poly;
    for (std::size_t i = 0; i < k; ++i) poly.c.push_back(a[i][k] / a[i][i]);
    bool ok = true;
    for (std::size_t i = k; i < s.size() && ok; ++i) {
      Rational val = 0, p = 1;
      for (auto& c : poly.c) {
        val += c * p;
        p *= s[i];
      }
      ok = val == v[i];
    }
    if (ok) {
      while (!poly.c.empty() && poly.c.back() == 0) poly.c.pop_back();
      return poly;
    }
  }
  return std::nullopt;
}

// Positive real roots in s of a polynomial of degree <= 2; nullopt past that.
std::optional<std::vector<double>> positive_roots(const SPolynomial& p) {
  std::vector<double> out;
  if (p.c.size() <= 1) return out;
  if (p.c.size() == 2) {
    double r = -to_double(p.c[0]) / to_double(p.c[1]);
    if (r > 0) out.push_back(r);
    return out;
  }
  if (p.c.size() == 3) {
    double a = to_double(p.c[2]), b = to_double(p.c[1]), c = to_double(p.c[0]);
    double disc = b * b - 4 * a * c;
    if (disc < 0) return out;
    for (double sg : {-1.0, 1.0}) {
      double r = (-b + sg * std::sqrt(disc)) / (2 * a);
      if (r > 0 && (out.empty() || out.back() != r)) out.push_back(r);
    }
    return out;
  }
  return std::nullopt;
}

std::vector<std::string> eps_parameters(const Expr& e) {
  std::vector<std::string> out;
  for (const auto& s : free_symbols(e)) {
    if (s.rfind("eps", 0) == 0) out.push_back(s);
  }
  return out;
}

}  // namespace

bool SPolynomial::is_zero() const {
  for (auto& v : c) {
    if (v != 0) return false;
  }
  return true;
}

std::string SPolynomial::str() const {
  Expr e;
  const Expr s = pow(sym("a1"), Expr(2));
  for (std::size_t i = 0; i < c.size(); ++i) e += Expr(c[i]) * pow(s, Expr(static_cast<long>(i)));
  return render(e);
}

ProbeReport nonequivalence_probe(const PdeInstance& source, const PdeInstance& target) {
  if (!is_zero(source.f1 - target.f1).zero) throw std::invalid_argument("probe: f1 differs between source and target");
  for (const Expr* b : {&target.f1, &target.f2}) {
    if (!expand(differentiate(*b, "u", 2)).is_zero_literal())
      throw std::invalid_argument("probe: target body is not affine in u: " + render(*b));
  }

  ProbeReport report;
  {
    const Expr u = sym("u"), a1sq = pow(sym("a1"), Expr(2));
    Bindings bar;
    bar.bind("u", sym("theta") * u + sym("nu"));
    Expr e17 = sym("Yt") + sym("Yy") * source.f1 - a1sq * substitute(target.f1, bar);
    Expr e18 = sym("thetat") * u + sym("nut") + (sym("thetay") * u + sym("nuy")) * source.f1 +
               sym("theta") * source.f2 - a1sq * substitute(target.f2, bar);
    for (const Expr* e : {&e17, &e18}) {
      auto coeffs = split_in_u(*e);
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero_literal()) continue;
        report.split_system.push_back("u^" + std::to_string(k) + ": " + render(coeffs[k]) + " = 0");
      }
    }
  }

  std::vector<std::string> eps;
  for (auto& n : eps_parameters(source.f1 + source.f2 + target.f1 + target.f2)) eps.push_back(n);
  const std::size_t branches = std::size_t{1} << eps.size();
  const std::vector<Rational> samples{1, 2, 3, 5, 7, 11, 13};

  report.obstruction = true;
  for (std::size_t mask = 0; mask < branches; ++mask) {
    ProbeCase pc;
    Bindings bind;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      int v = (mask >> i) & 1 ? 1 : -1;
      pc.signs[eps[i]] = v;
      bind.bind(eps[i], Expr(v));
    }
    const Expr f1 = substitute(source.f1, bind), f2 = substitute(source.f2, bind);
    const Expr F1 = substitute(target.f1, bind), F2 = substitute(target.f2, bind);

    std::vector<std::vector<Form>> per_sample;
    for (auto& s : samples) per_sample.push_back(conditions_at(f1, f2, F1, F2, s));
    for (auto& c : per_sample) {
      if (c.size() != per_sample.front().size())
        throw std::invalid_argument("probe: condition structure changes with a1");
    }

    std::vector<SPolynomial> theta_only;
    for (std::size_t k = 0; k < per_sample.front().size(); ++k) {
      ProbeCondition cond;
      std::array<SPolynomial*, 3> slots{&cond.theta, &cond.nu, &cond.constant};
      for (std::size_t part = 0; part < 3; ++part) {
        std::vector<Rational> vals;
        for (auto& c : per_sample) vals.push_back(c[k][part]);
        auto poly = fit(samples, vals);
        if (!poly) throw std::invalid_argument("probe: condition is not polynomial in a1^2 of degree <= 4");
        *slots[part] = *poly;
      }
      if (cond.theta.is_zero() && cond.nu.is_zero() && cond.constant.is_zero()) continue;
      std::ostringstream text;
      text << "(" << cond.theta.str() << ")*theta + (" << cond.nu.str() << ")*nu + (" << cond.constant.str()
           << ") = 0";
      cond.text = text.str();
      if (cond.nu.is_zero() && cond.constant.is_zero()) theta_only.push_back(cond.theta);
      pc.conditions.push_back(std::move(cond));
    }

    // theta != 0, so each theta-only condition pins a1^2 to a positive root.
    std::optional<std::vector<double>> allowed;
    bool unresolved = false;
    for (auto& p : theta_only) {
      if (p.c.size() == 3 && p.c[1] == 0) pc.a1_fourth = -p.c[0] / p.c[2];
      auto roots = positive_roots(p);
      if (!roots) {
        unresolved = true;
        continue;
      }
      if (!allowed) {
        allowed = *roots;
      } else {
        std::vector<double> keep;
        for (double r : *allowed) {
          for (double q : *roots) {
            if (std::abs(r - q) < 1e-12 * (1 + r)) keep.push_back(r);
          }
        }
        allowed = keep;
      }
    }
    pc.obstructed = allowed && allowed->empty() && !unresolved;
    if (allowed) {
      for (double s : *allowed) pc.admissible_a1.push_back(std::sqrt(s));
    }
    std::ostringstream summary;
    for (auto& [n, v] : pc.signs) summary << n << "=" << v << " ";
    if (pc.a1_fourth) summary << "a1^4 = " << to_string(*pc.a1_fourth) << "; ";
    if (pc.obstructed) {
      summary << "no real a1: theta must vanish";
    } else if (allowed) {
      summary << "a1 in {";
      for (std::size_t i = 0; i < pc.admissible_a1.size(); ++i) summary << (i ? ", " : "") << pc.admissible_a1[i];
      summary << "}";
    } else {
      summary << "no condition on a1";
    }
    pc.summary = summary.str();
    report.obstruction = report.obstruction && pc.obstructed;
    report.cases.push_back(std::move(pc));
  }
  if (report.cases.empty()) report.obstruction = false;
  return report;
}

}  // namespace kolmo
