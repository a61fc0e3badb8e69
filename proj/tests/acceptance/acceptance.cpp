// Acceptance criteria 1-11. One PASS/FAIL line per criterion; every tolerance is pinned below.
// Exit status: 0 once every requested criterion was evaluated, 1 with --strict and any FAIL,
// 2 when a criterion could not be evaluated at all.

#include "cli.hpp"
#include "oracles.hpp"
#include "suites.hpp"

#include "kolmo/catalog/catalog.hpp"
#include "kolmo/expr/calculus.hpp"
#include "kolmo/expr/parse.hpp"
#include "kolmo/numeric/cole_hopf.hpp"
#include "kolmo/numeric/fd_solver.hpp"
#include "kolmo/numeric/residual.hpp"
#include "kolmo/symmetry/prolongation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace kolmo;
using kolmo::cli::json;
using kolmo::cli::Report;
using kolmo::cli::SuiteOptions;
using kolmo::cli::Verdict;

namespace {

// zero test
constexpr double kZeroTau = 1e-9;
constexpr int kZeroPoints = 50;
constexpr int kKernelPairs = 10;
// sweeps
constexpr std::size_t kMinSamples = 4;
constexpr std::size_t kControls = 10;
// algebra
constexpr int kPrintedRelations = 6;
constexpr int kCommutingPairs = 9;
constexpr int kJacobiTriples = 20;
// finite differences
constexpr int kFdNodes = 64;
constexpr double kFdLinf = 1e-2;
constexpr double kFdRatio = 1.8;
constexpr double kFdResidual = 1e-6;
// Cole-Hopf
constexpr double kChZero = 1e-10;
constexpr double kChWave = 1e-4;
constexpr double kChFd = 1e-3;
constexpr double kChLift = 1e-3;
constexpr double kChFdTime = 0.1;
// determinism
constexpr std::uint64_t kDeterminismSeed = 7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const Catalog& catalog() {
  static const Catalog c = load_catalog(default_catalog_path());
  return c;
}

SuiteOptions options() {
  SuiteOptions o;
  o.threads = 0;
  return o;
}

const cli::Item* find(const Report& r, const std::string& id) {
  for (const auto& it : r.items)
    if (it.id == id) return &it;
  return nullptr;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s.empty() ? "-" : s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// 1: translations are symmetries for random polynomial nonlinearities
Outcome kernel() {
  std::mt19937_64 rng(0x6b65726e656cULL);
  std::uniform_int_distribution<int> coef(-4, 4), deg(1, 4);
  ZeroTestConfig cfg;
  cfg.tau_abs = cfg.tau_rel = kZeroTau;
  cfg.points = kZeroPoints;
  int ok = 0;
  for (int k = 0; k < kKernelPairs; ++k) {
    auto poly = [&](int min_degree) {
      Expr p = 0;
      int d = std::max(deg(rng), min_degree);
      for (int i = 0; i <= d; ++i) p += Expr(coef(rng)) * pow(sym("u"), Expr(i));
      // keep the top coefficient nonzero so the degree is what was drawn
      return p + pow(sym("u"), Expr(d));
    };
    PdeInstance pde;
    pde.f1 = poly(1);
    pde.f2 = poly(0);
    if (free_symbols(pde.f1).count("u") == 0) continue;
    bool all = true;
    for (const char* f : {"Dt", "Dx", "Dy"}) {
      cfg.seed = rng();
      all = all && is_zero(invariance_residual(VectorField::parse(f), pde), cfg).zero;
    }
    ok += all;
  }
  return {ok == kKernelPairs, std::to_string(ok) + "/" + std::to_string(kKernelPairs) + " random (f1, f2) pairs"};
}

bool finite_domain_only(const ClassificationEntry& e) {
  return sample_bindings(e.constraints, e.parameters(), kMinSamples).size() < kMinSamples;
}

// rows whose parenthesization reading may be flagged instead of passing
const std::set<std::string> kReadingRows = {"C.7", "C.9", "C.21"};

// 2: all classification rows, enough samples, controls caught
Outcome classification_sweep() {
  auto o = options();
  o.table = "classification";
  Report r = cli::verify_symmetry(catalog(), o);
  std::vector<std::string> failed, flagged_ok, thin;
  std::size_t controls = 0;
  for (const auto& e : catalog().classification) {
    const auto* it = find(r, e.id);
    if (!it) {
      failed.push_back(e.id + " missing");
      continue;
    }
    if (it->verdict == Verdict::flagged && kReadingRows.count(e.id)) {
      flagged_ok.push_back(e.id);
    } else if (it->verdict != Verdict::pass) {
      failed.push_back(e.id + " " + cli::verdict_name(it->verdict));
    }
    if (!e.parameters().empty()) {
      std::size_t need = finite_domain_only(e) ? sample_bindings(e.constraints, e.parameters(), kMinSamples).size()
                                               : kMinSamples;
      if (it->details["samples"].size() < need) thin.push_back(e.id);
    }
  }
  for (const auto& it : r.items)
    if (it.id.rfind("control.", 0) == 0 && it.verdict == Verdict::pass) ++controls;
  bool pass = failed.empty() && thin.empty() && controls == kControls;
  std::string d = "failing: " + join(failed) + "; flagged under reading rule: " + join(flagged_ok) +
                  "; under-sampled: " + join(thin) + "; controls detected " + std::to_string(controls) + "/" +
                  std::to_string(kControls);
  return {pass, d};
}

// 3: canonical rows, identically
Outcome canonical_sweep() {
  auto o = options();
  o.table = "canonical";
  Report r = cli::verify_symmetry(catalog(), o);
  std::vector<std::string> bad;
  std::size_t seen = 0;
  for (const auto& e : catalog().canonical) {
    const auto* it = find(r, e.id);
    seen += it != nullptr;
    if (!it || it->verdict != Verdict::pass) bad.push_back(e.id + (it ? std::string(" ") + cli::verdict_name(it->verdict) : " missing"));
  }
  return {bad.empty() && seen == 14, std::to_string(seen - bad.size()) + "/14 rows pass; not passing: " + join(bad)};
}

// 4: structure of the six-dimensional algebra
Outcome algebra() {
  Report r = cli::verify_algebra(catalog(), options());
  const auto& a = r.extra["algebra"];
  int nonzero = a["nonzero_relations"], matched = a["printed_relations_matched"];
  int commuting = a["commuting_pairs"], jacobi = a["jacobi_vanishing"], triples = a["jacobi_triples"];
  bool pass = nonzero == kPrintedRelations && matched == kPrintedRelations && commuting == kCommutingPairs &&
              triples == kJacobiTriples && jacobi == kJacobiTriples && r.count(Verdict::fail) == 0;
  return {pass, std::to_string(matched) + "/" + std::to_string(nonzero) + " nonzero relations as printed, " +
                    std::to_string(commuting) + " commuting pairs, " + std::to_string(jacobi) + "/" +
                    std::to_string(triples) + " Jacobi triples vanish"};
}

// 5: subalgebra lists closed, plus the non-closed control
Outcome subalgebras() {
  Report r = cli::verify_subalgebras(catalog(), options());
  std::vector<std::string> bad;
  std::size_t ones = 0, twos = 0;
  for (const auto& s : catalog().subalgebras) {
    const auto* it = find(r, s.id);
    if (!it || it->verdict != Verdict::pass) bad.push_back(s.id);
    (s.generators.size() == 1 ? ones : twos) += 1;
  }
  const auto* control = find(r, "control.<X2, X5>");
  bool control_ok = control && control->verdict == Verdict::pass;
  return {bad.empty() && control_ok, std::to_string(ones) + " one-dimensional and " + std::to_string(twos) +
                                         " two-dimensional entries; failing: " + join(bad) + "; control " +
                                         (control_ok ? "not closed, defect X4" : "wrong")};
}

// 6: forms, mappings, transport, probe
Outcome equivalence() {
  Report r = cli::verify_equivalence(catalog(), options());
  Report p = cli::verify_probe(catalog(), options());
  std::vector<std::string> bad, gaps;
  auto check = [&](const std::string& id) {
    const auto* it = find(r, id);
    if (!it || it->verdict != Verdict::pass) bad.push_back(id + (it ? std::string(" ") + cli::verdict_name(it->verdict) : " missing"));
    return it;
  };
  for (const auto& e : catalog().f1_forms) check(e.id);
  for (const auto& e : catalog().f2_forms) check(e.id);
  for (const auto& e : catalog().mappings) {
    const auto* it = check(e.id);
    check("transport." + e.id);
    auto params = e.parameters();
    if (it && std::find(params.begin(), params.end(), "teps2") != params.end()) {
      std::set<std::string> seen;
      for (const auto& run : it->details["runs"]) {
        std::string s = run.value("sample", "");
        for (const char* v : {"teps2=-1", "teps2=0", "teps2=1"})
          if (s.find(v) != std::string::npos) seen.insert(v);
      }
      if (seen.size() != 3) gaps.push_back(e.id);
    }
  }
  std::string probe = "probe missing";
  bool probe_ok = false;
  if (const auto* it = find(p, "P.plus")) {
    probe_ok = it->verdict == Verdict::pass;
    probe = "probe claims " + it->details.value("claim", std::string("?")) + ", computed " +
            it->details["computed"].dump() + ", obstruction " +
            (it->details.value("obstruction", false) ? "found" : "not found");
  }
  return {bad.empty() && gaps.empty() && probe_ok,
          "not passing: " + join(bad) + "; teps2 coverage gaps: " + join(gaps) + "; " + probe};
}

// 7: reductions
Outcome reductions() {
  Report r = cli::verify_reductions(catalog(), options());
  std::vector<std::string> bad;
  bool burgers_const = false;
  if (const auto* b = find(r, "R.burgers")) {
    burgers_const = b->verdict == Verdict::pass && b->details["derived"].value("lambda_constant", false);
  }
  if (!burgers_const) bad.push_back("R.burgers");
  for (const char* id : {"R.alpha", "R.shift", "R.wave"}) {
    const auto* it = find(r, id);
    if (!it || it->verdict != Verdict::pass) bad.push_back(id);
  }
  std::string scaling = "not recorded";
  if (const auto* s = find(r, "R.scaling")) {
    bool direct = s->details["derived"].value("match", false);
    bool flipped = false;
    if (s->details.contains("variants"))
      for (const auto& v : s->details["variants"]) flipped = flipped || v.value("match", false);
    scaling = direct ? "match (w = t - x)" : flipped ? "sign-flipped match" : "no match";
  }
  return {bad.empty() && scaling != "not recorded",
          "not matching: " + join(bad) + "; scaling reduction verdict: " + scaling};
}

// 8: exact solutions
Outcome solutions() {
  Report r = cli::verify_solutions(catalog(), options());
  std::vector<std::string> bad, remaining;
  for (const char* id : {"S.alpha", "S.front", "S.exp", "S.shift", "S.wave-rational"}) {
    const auto* it = find(r, id);
    if (!it || it->verdict != Verdict::pass) bad.push_back(std::string(id) + (it ? std::string(" ") + cli::verdict_name(it->verdict) : " missing"));
  }
  for (const char* id : {"S.wave-tan", "S.wave-exp"}) {
    const auto* it = find(r, id);
    if (!it) {
      bad.push_back(std::string(id) + " missing");
      continue;
    }
    if (it->verdict == Verdict::pass) {
      remaining.push_back(std::string(id) + " pass");
      continue;
    }
    bool noted = false;
    for (const auto& n : r.notes) noted = noted || n.id == id;
    if (it->verdict == Verdict::flagged && noted) {
      remaining.push_back(std::string(id) + " flagged with note");
    } else {
      bad.push_back(std::string(id) + " " + cli::verdict_name(it->verdict));
    }
  }
  return {bad.empty(), "not zero: " + join(bad) + "; remaining: " + join(remaining)};
}

// 9: finite differences against the exact front
Outcome numerics() {
  std::vector<double> errs;
  for (int n : {kFdNodes / 4, kFdNodes / 2, kFdNodes}) {
    auto sol = numeric::fd_solve(oracle::front_config(n));
    errs.push_back(numeric::linf_error(sol, sol.times.size() - 1, oracle::front_exact()));
  }
  double ratio = std::min(errs[0] / errs[1], errs[1] / errs[2]);
  numeric::GridSpec g;
  g.t1 = 0.5;
  double res = numeric::numeric_residual(oracle::front_exact(), PdeInstance::make("u", "0", -1), g).max_abs;
  bool pass = errs[2] <= kFdLinf && ratio >= kFdRatio && res <= kFdResidual;
  return {pass, "Linf " + fmt(errs[2]) + " at 64x64 (limit " + fmt(kFdLinf) + "), min ratio " + fmt(ratio) +
                    " (limit " + fmt(kFdRatio) + "), residual " + fmt(res) + " (limit " + fmt(kFdResidual) + ")"};
}

// 10: Cole-Hopf against closed forms, finite differences and the full equation
Outcome cole_hopf() {
  numeric::ColeHopf zero_data([](double) { return 0.0; });
  double z0 = 0;
  for (double t : {0.05, 0.5, 2.0})
    for (double z = -6; z <= 6; z += 0.5) z0 = std::max(z0, std::abs(zero_data(t, z)));

  numeric::ColeHopf wave(parse("1 + sinh(z/2)/cosh(z/2)"));
  double ew = 0;
  for (double t : {0.1, 0.5, 1.0})
    for (double z = -5; z <= 5; z += 0.25) ew = std::max(ew, std::abs(wave(t, z) - 1 - std::tanh((z + t) / 2)));

  auto bump = [](double z) { return std::exp(-z * z); };
  oracle::Burgers1D fd;
  auto phi = fd.solve(bump, kChFdTime);
  numeric::ColeHopf ch(bump);
  double ef = 0;
  for (int k = 0; k < static_cast<int>(phi.size()); k += 25)
    if (std::abs(fd.z(k)) <= 6) ef = std::max(ef, std::abs(ch(kChFdTime, fd.z(k)) - phi[k]));

  numeric::GridSpec g;
  g.t0 = 0.2;
  g.t1 = 0.6;
  g.x0 = -1;
  g.nt = g.nx = g.ny = 5;
  double lift = numeric::numeric_residual([&](double t, double x, double y) { return ch(t, y - x); },
                                          PdeInstance::make("u", "0", -1), g)
                    .max_abs;
  bool pass = z0 <= kChZero && ew <= kChWave && ef <= kChFd && lift <= kChLift;
  return {pass, "zero data " + fmt(z0) + ", traveling wave " + fmt(ew) + ", vs finite differences " + fmt(ef) +
                    ", lifted residual " + fmt(lift)};
}

// 11: identical reports for identical argv and seed
Outcome determinism() {
  auto once = [] {
    std::ostringstream out, err;
    int code = cli::run({"--allow-flagged", "verify", "symmetry", "--table", "classification", "--seed",
                         std::to_string(kDeterminismSeed)},
                        out, err);
    auto j = json::parse(out.str());
    j.erase("timestamps");
    return std::make_pair(code, j.dump(2));
  };
  auto a = once(), b = once();
  bool pass = a.first == b.first && a.second == b.second;
  return {pass, std::string(pass ? "byte-identical" : "reports differ") + " (" + std::to_string(a.second.size()) +
                    " bytes, timestamps excluded)"};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  bool strict = false;
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  app.add_flag("--strict", strict, "exit 1 when any criterion fails");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "kernel translations", kernel},
      {2, "classification sweep", classification_sweep},
      {3, "canonical sweep", canonical_sweep},
      {4, "algebra structure", algebra},
      {5, "subalgebra lists", subalgebras},
      {6, "equivalence", equivalence},
      {7, "reductions", reductions},
      {8, "exact solutions", solutions},
      {9, "finite differences", numerics},
      {10, "Cole-Hopf", cole_hopf},
      {11, "determinism", determinism},
  };
  int failed = 0, errors = 0;
  for (const auto& c : all) {
    if (only && c.number != only) continue;
    try {
      auto o = c.run();
      failed += !o.pass;
      std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.number << " " << c.name << ": " << o.detail << std::endl;
    } catch (const std::exception& e) {
      ++errors;
      std::cout << "ERROR " << c.number << " " << c.name << ": " << e.what() << std::endl;
    }
  }
  if (errors) return 2;
  return strict && failed ? 1 : 0;
}
