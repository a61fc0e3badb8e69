#include "commands.hpp"

#include "kolmo/expr/parse.hpp"
#include "kolmo/numeric/cole_hopf.hpp"
#include "kolmo/numeric/export.hpp"
#include "kolmo/numeric/fd_solver.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

namespace kolmo::cli {

namespace {

template <typename T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::string need(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw ConfigError(std::string("config needs string field '") + key + "'");
  return j.at(key).get<std::string>();
}

std::pair<double, double> interval(const json& j, const char* key, std::pair<double, double> fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(std::string("config field '") + key + "' must be [lo, hi]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Report run_solve(const Catalog* catalog, const std::string& config_path, const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot read config " + config_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + config_path + ": " + e.what());
  }

  numeric::SolverConfig cfg;
  if (!j.contains("pde") || !j["pde"].is_object()) throw ConfigError("config needs a 'pde' object");
  const json& pj = j["pde"];
  if (pj.contains("ref")) {
    if (!catalog) throw ConfigError("pde ref needs a catalog");
    PdeRef ref;
    ref.ref = pj["ref"].get<std::string>();
    cfg.pde = catalog->resolve(ref);
  } else {
    cfg.pde = PdeInstance::make(need(pj, "f1"), get<std::string>(pj, "f2", "0"), get<int>(pj, "y_sign", 1));
  }
  cfg.t_end = get<double>(j, "t_end", cfg.t_end);
  std::tie(cfg.x0, cfg.x1) = interval(j, "x", {cfg.x0, cfg.x1});
  std::tie(cfg.y0, cfg.y1) = interval(j, "y", {cfg.y0, cfg.y1});
  cfg.nx = get<int>(j, "nx", cfg.nx);
  cfg.ny = get<int>(j, "ny", cfg.ny);
  if (j.contains("dt") && j["dt"].is_number()) {
    cfg.dt = j["dt"].get<double>();
  } else if (j.contains("dt") && j["dt"] != "auto") {
    throw ConfigError("dt must be a number or \"auto\"");
  }
  cfg.initial = parse(need(j, "initial"));
  std::string boundary = get<std::string>(j, "boundary", "dirichlet");
  if (boundary == "dirichlet") {
    cfg.boundary = numeric::Boundary::dirichlet;
  } else if (boundary == "periodic_y") {
    cfg.boundary = numeric::Boundary::periodic_y;
  } else {
    throw ConfigError("boundary must be dirichlet or periodic_y");
  }
  std::optional<Expr> exact;
  if (j.contains("exact")) exact = parse(need(j, "exact"));
  cfg.boundary_values = j.contains("boundary_values") ? parse(need(j, "boundary_values"))
                        : exact                       ? *exact
                                                      : cfg.initial;
  cfg.params = get<std::map<std::string, double>>(j, "params", {});
  cfg.snapshots = get<int>(j, "snapshots", cfg.snapshots);
  std::optional<double> tolerance;
  if (j.contains("tolerance")) tolerance = get<double>(j, "tolerance", 0.0);

  Report rep;
  auto sol = numeric::fd_solve(cfg);
  std::map<std::string, double> metrics{{"steps", sol.steps}};
  json slices = json::array();
  double worst = 0.0;
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    json s{{"t", sol.times[k]}};
    if (exact) {
      double e = numeric::linf_error(sol, k, *exact, cfg.params);
      s["linf_error"] = e;
      worst = std::max(worst, e);
    }
    slices.push_back(std::move(s));
  }
  if (exact) metrics["linf_error"] = worst;
  Item it{"solve", Verdict::pass, json{{"slices", slices}, {"metrics", metrics}}};
  if (tolerance && exact) {
    it.details["tolerance"] = *tolerance;
    if (worst > *tolerance) it.verdict = Verdict::fail;
  }
  if (!out_dir.empty()) it.details["files"] = numeric::export_solution(out_dir, cfg, sol, metrics);
  rep.add(std::move(it));
  return rep;
}

Report run_cole_hopf(const ColeHopfRequest& r) {
  numeric::ColeHopfOptions opts;
  opts.printed_sign = r.printed_sign;
  numeric::ColeHopf ch(parse(r.g), {}, opts);
  Report rep;
  json res{{"g", r.g}, {"t", r.t}, {"sign", r.printed_sign ? "printed" : "default"}};
  if (r.z) {
    res["z"] = *r.z;
    res["phi"] = ch(r.t, *r.z);
  } else {
    double z0 = 0, z1 = 0;
    long n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(r.grid);
    if (!(is >> z0 >> c1 >> z1 >> c2 >> n) || c1 != ':' || c2 != ':' || n < 2) {
      throw ConfigError("--grid must read z0:z1:n with n >= 2");
    }
    std::vector<double> zs, phis;
    for (long k = 0; k < n; ++k) {
      double z = z0 + (z1 - z0) * static_cast<double>(k) / static_cast<double>(n - 1);
      zs.push_back(z);
      phis.push_back(ch(r.t, z));
    }
    res["grid"] = {{"z0", z0}, {"z1", z1}, {"n", n}};
    if (!r.out.empty()) {
      numeric::write_profile_csv(r.out, zs, phis);
      res["file"] = r.out;
    } else {
      res["phi"] = phis;
    }
  }
  rep.add({"cole-hopf", Verdict::pass, res});
  return rep;
}

}  // namespace kolmo::cli
