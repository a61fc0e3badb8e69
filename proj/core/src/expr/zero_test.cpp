#include "kolmo/expr/zero_test.hpp"

#include <cmath>
#include <numbers>
#include <unordered_set>

namespace kolmo {

double Rng::uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

// --- random smooth functions -------------------------------------------------

void RandomFunctions::redraw(Rng& rng, const std::vector<std::pair<std::string, int>>& arities) {
  shapes_.clear();
  for (const auto& [name, arity] : arities) {
    Shape s;
    for (int k = 0; k <= 4; ++k) s.poly.push_back(rng.uniform(-1.0, 1.0));
    for (int i = 0; i < arity; ++i) {
      s.l.push_back(rng.uniform(-1.5, 1.5));
      s.m.push_back(rng.uniform(-1.5, 1.5));
      s.q.push_back(rng.uniform(-0.7, 0.7));
    }
    s.a = rng.uniform(0.5, 1.5) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    s.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    s.d = rng.uniform(0.5, 1.5) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    shapes_[name] = std::move(s);
  }
}

double RandomFunctions::operator()(const std::string& name, const std::vector<int>& orders,
                                   std::span<const double> args) const {
  auto it = shapes_.find(name);
  if (it == shapes_.end()) return std::nan("");
  const Shape& s = it->second;
  int r = 0;
  double lv = 0, mv = 0, qv = 0, lprod = 1, mprod = 1, qprod = 1;
  for (std::size_t i = 0; i < args.size() && i < s.l.size(); ++i) {
    lv += s.l[i] * args[i];
    mv += s.m[i] * args[i];
    qv += s.q[i] * args[i];
    r += orders[i];
    lprod *= std::pow(s.l[i], orders[i]);
    mprod *= std::pow(s.m[i], orders[i]);
    qprod *= std::pow(s.q[i], orders[i]);
  }
  double poly = 0;
  for (int k = r; k < static_cast<int>(s.poly.size()); ++k) {
    double falling = 1;
    for (int j = 0; j < r; ++j) falling *= k - j;
    poly += s.poly[static_cast<std::size_t>(k)] * falling * std::pow(lv, k - r);
  }
  poly *= lprod;
  double wave = s.a * mprod * std::sin(mv + s.phase + r * std::numbers::pi / 2);
  double growth = s.d * qprod * std::exp(qv);
  return poly + wave + growth;
}

OpaqueFn RandomFunctions::as_opaque() const {
  return [this](const std::string& name, const std::vector<int>& orders, std::span<const double> args) {
    return (*this)(name, orders, args);
  };
}

// --- sampling ----------------------------------------------------------------

Sampler::Sampler(std::vector<std::string> variables, const SamplingSpec& spec, bool positive_u, double exclusion)
    : variables_(std::move(variables)), spec_(spec), positive_u_(positive_u), exclusion_(exclusion) {}

std::vector<double> Sampler::draw(Rng& rng) const {
  std::vector<double> values;
  values.reserve(variables_.size());
  auto excluded_uniform = [&](double lo, double hi) {
    double v = 0;
    do {
      v = rng.uniform(lo, hi);
    } while (std::abs(v) < exclusion_);
    return v;
  };
  auto pick = [&](const std::vector<double>& options) { return options[rng.index(options.size())]; };

  for (const auto& name : variables_) {
    if (auto f = spec_.fixed.find(name); f != spec_.fixed.end()) {
      values.push_back(f->second);
      continue;
    }
    if (auto c = spec_.choices.find(name); c != spec_.choices.end()) {
      values.push_back(pick(c->second));
      continue;
    }
    bool done = false;
    for (const auto& con : spec_.constraints) {
      if (con.kind == Constraint::Kind::member && con.symbol == name) {
        std::vector<double> opts;
        for (const auto& v : con.values) opts.push_back(to_double(v));
        values.push_back(pick(opts));
        done = true;
        break;
      }
    }
    if (done) continue;
    if (auto r = spec_.ranges.find(name); r != spec_.ranges.end()) {
      values.push_back(excluded_uniform(r->second.first, r->second.second));
      continue;
    }
    if (name.rfind("teps", 0) == 0) {
      values.push_back(pick({-1.0, 0.0, 1.0}));
    } else if (name.rfind("eps", 0) == 0) {
      values.push_back(pick({-1.0, 1.0}));
    } else if (name == "m" || name == "n") {
      std::vector<double> opts;
      for (const auto& v : exponent_samples()) opts.push_back(to_double(v));
      values.push_back(pick(opts));
    } else if (name == "u" && positive_u_) {
      values.push_back(rng.uniform(0.1, 2.0));
    } else {
      values.push_back(excluded_uniform(-2.0, 2.0));
    }
  }
  return values;
}

std::map<std::string, double> Sampler::as_map(const std::vector<double>& values) const {
  std::map<std::string, double> point(spec_.fixed.begin(), spec_.fixed.end());
  for (std::size_t i = 0; i < variables_.size(); ++i) point[variables_[i]] = values[i];
  return point;
}

bool Sampler::admissible(const std::vector<double>& values) const {
  if (spec_.constraints.empty()) return true;
  auto point = as_map(values);
  for (const auto& con : spec_.constraints) {
    if (con.kind != Constraint::Kind::relation) continue;
    bool bound = true;
    for (const auto& s : con.symbols()) bound = bound && point.count(s) > 0;
    if (bound && !con.holds(point)) return false;
  }
  return true;
}

bool needs_positive_u(const Expr& e) {
  std::unordered_set<const Node*> seen;
  std::function<bool(const Expr&)> scan = [&](const Expr& n) -> bool {
    if (!seen.insert(n.node()).second) return false;
    if (n.kind() == NodeKind::func && n.fn() == Fn::ln && depends_on(n.ops()[0], "u")) return true;
    if (n.kind() == NodeKind::pow && depends_on(n.ops()[0], "u")) {
      const Expr& x = n.ops()[1];
      if (!x.is_number() || !is_integer(x.value())) return true;
    }
    for (const auto& op : n.ops()) {
      if (scan(op)) return true;
    }
    return false;
  };
  return scan(e);
}

std::vector<std::pair<std::string, int>> opaque_arities(const Expr& e) {
  std::map<std::string, int> found;
  std::unordered_set<const Node*> seen;
  std::function<void(const Expr&)> scan = [&](const Expr& n) {
    if (!seen.insert(n.node()).second) return;
    if (n.kind() == NodeKind::apply) found[n.name()] = static_cast<int>(n.ops().size());
    for (const auto& op : n.ops()) scan(op);
  };
  scan(e);
  return {found.begin(), found.end()};
}

ZeroVerdict is_zero(const Expr& e, const ZeroTestConfig& config) {
  ZeroVerdict verdict;
  if (e.is_number()) {
    verdict.zero = e.is_zero_literal();
    verdict.samples = 1;
    if (!verdict.zero) verdict.witness = Witness{{}, to_double(e.value()), 0.0};
    return verdict;
  }

  const bool is_sum = e.kind() == NodeKind::add;
  std::vector<Expr> roots{e};
  if (is_sum) roots.insert(roots.end(), e.ops().begin(), e.ops().end());
  Program program = Program::compile(roots);

  bool positive_u = config.sampling.positive_u.value_or(needs_positive_u(e));
  Sampler sampler(program.variables(), config.sampling, positive_u, config.exclusion);
  auto arities = opaque_arities(e);
  RandomFunctions functions;
  OpaqueFn opaque = functions.as_opaque();
  Program::Options options;
  options.singular_guard = config.singular_guard;
  options.opaque = &opaque;

  Rng rng(config.seed);
  std::vector<double> out(roots.size());
  const int max_attempts = 100 * config.points;
  while (verdict.samples < config.points && verdict.attempts < max_attempts) {
    ++verdict.attempts;
    std::vector<double> values = sampler.draw(rng);
    if (!sampler.admissible(values)) continue;
    if (!arities.empty()) functions.redraw(rng, arities);
    if (program.run(values, out, options) != EvalStatus::ok) continue;

    double value = out[0];
    double scale = 0;
    if (is_sum) {
      for (std::size_t i = 1; i < out.size(); ++i) scale += std::abs(out[i]);
    } else {
      scale = std::abs(value);
    }
    double bound = config.tau_abs + config.tau_rel * scale;
    verdict.worst_ratio = std::max(verdict.worst_ratio, std::abs(value) / bound);
    if (std::abs(value) > bound) {
      verdict.zero = false;
      verdict.witness = Witness{sampler.as_map(values), value, scale};
      return verdict;
    }
    ++verdict.samples;
  }
  if (verdict.samples < config.points) {
    std::string msg = "found only " + std::to_string(verdict.samples) + " of " + std::to_string(config.points) +
                      " in-domain points after " + std::to_string(verdict.attempts) + " attempts";
    if (!config.sampling.constraints.empty()) {
      msg += "; constraints:";
      for (const auto& c : config.sampling.constraints) msg += " [" + c.text + "]";
    }
    throw SamplingError(msg);
  }
  verdict.zero = true;
  return verdict;
}

}  // namespace kolmo
