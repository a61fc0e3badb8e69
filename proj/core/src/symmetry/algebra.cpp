#include "kolmo/symmetry/algebra.hpp"

#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/render.hpp"

namespace kolmo {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = Rational(1) / m[row][c];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

// Exact value of a coefficient at a rational point (t, x, y, u).
Rational exact_at(const Expr& e, const std::array<Rational, 4>& point) {
  Bindings b;
  b.bind("t", Expr(point[0])).bind("x", Expr(point[1])).bind("y", Expr(point[2])).bind("u", Expr(point[3]));
  Expr v = substitute(e, b);
  if (!v.is_number())
    throw NotInSpanError("coefficient is not a rational function of (t, x, y, u): " + render(e));
  return v.value();
}

}  // namespace

std::optional<std::vector<Rational>> solve_exact(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
  auto pivots = rref(a, cols);
  for (std::size_t r = pivots.size(); r < a.size(); ++r) {
    if (a[r][cols] != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

std::size_t rank_exact(RationalMatrix a) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  return rref(a, cols).size();
}

std::vector<Rational> coordinates(const VectorField& X, const std::vector<VectorField>& basis) {
  // Small fixed rational points; enough rows to pin down every coordinate.
  static const std::array<std::array<Rational, 4>, 8> kPoints = {{
      {Rational(1, 3), Rational(2, 5), Rational(-3, 7), Rational(5, 11)},
      {Rational(-2, 3), Rational(1, 7), Rational(4, 9), Rational(-1, 5)},
      {Rational(3, 2), Rational(-5, 3), Rational(2, 11), Rational(7, 4)},
      {Rational(5, 7), Rational(3, 8), Rational(-9, 5), Rational(-4, 3)},
      {Rational(-7, 9), Rational(-2, 7), Rational(6, 5), Rational(3, 10)},
      {Rational(9, 4), Rational(5, 6), Rational(1, 13), Rational(-8, 7)},
      {Rational(4, 11), Rational(-7, 2), Rational(-5, 6), Rational(2, 9)},
      {Rational(-3, 5), Rational(8, 3), Rational(7, 12), Rational(11, 6)},
  }};
  RationalMatrix a;
  std::vector<Rational> b;
  auto target = X.coefficients();
  for (const auto& p : kPoints) {
    for (std::size_t i = 0; i < 4; ++i) {
      std::vector<Rational> row;
      for (const auto& f : basis) row.push_back(exact_at(f.coefficients()[i], p));
      a.push_back(std::move(row));
      b.push_back(exact_at(target[i], p));
    }
  }
  auto x = solve_exact(std::move(a), std::move(b));
  if (!x) throw NotInSpanError("field is not a constant combination of the basis: " + X.str());
  // Sampling can only refute; confirm symbolically.
  VectorField rebuilt{Expr(0), Expr(0), Expr(0), Expr(0)};
  for (std::size_t k = 0; k < basis.size(); ++k) rebuilt = rebuilt + Expr((*x)[k]) * basis[k];
  VectorField diff = rebuilt - X;
  for (const auto& c : diff.coefficients()) {
    if (!expand(c).is_zero_literal())
      throw NotInSpanError("field is not a constant combination of the basis: " + X.str());
  }
  return *x;
}

std::string format_combination(const std::vector<Rational>& coords, const std::vector<std::string>& names) {
  Expr e;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] != 0) e += Expr(coords[k]) * Expr::symbol(names[k]);
  }
  return render(e);
}

SubalgebraVerdict is_subalgebra(const std::vector<VectorField>& gens, const NamedBasis& ambient) {
  SubalgebraVerdict v;
  const std::size_t n = gens.size();
  std::vector<std::vector<Rational>> gc;
  for (const auto& g : gens) gc.push_back(coordinates(g, ambient.fields));

  RationalMatrix gt;  // columns = generators
  for (std::size_t k = 0; k < ambient.fields.size(); ++k) {
    std::vector<Rational> row;
    for (std::size_t i = 0; i < n; ++i) row.push_back(gc[i][k]);
    gt.push_back(std::move(row));
  }
  RationalMatrix rows(gc.begin(), gc.end());
  v.dimension = rank_exact(rows);

  v.structure.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto c = coordinates(commutator(gens[i], gens[j]), ambient.fields);
      auto lambda = solve_exact(gt, c);
      if (!lambda) {
        v.closed = false;
        v.offending_i = i;
        v.offending_j = j;
        v.defect = c;
        v.structure.clear();
        return v;
      }
      v.structure[i][j] = *lambda;
      for (auto& x : *lambda) x = -x;
      v.structure[j][i] = *lambda;
    }
  }
  v.closed = true;
  return v;
}

}  // namespace kolmo
