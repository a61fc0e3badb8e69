#include "cli.hpp"

#include "commands.hpp"
#include "report.hpp"
#include "suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace kolmo::cli {

namespace {

std::string iso_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::uint64_t parse_seed(const std::string& s) {
  if (s == "random") return (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  std::size_t pos = 0;
  std::uint64_t v = std::stoull(s, &pos, 0);
  if (pos != s.size()) throw CLI::ValidationError("--seed", "expected an integer or 'random'");
  return v;
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "kolmo";
  for (auto& a : args) s += " " + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group classification checks for u_t - u_xx + f1(u) u_y = f2(u)", "kolmo"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::string catalog_path, seed_text = "0x6b6f6c6d6f", format = "json";
  bool allow_flagged = false;
  unsigned threads = 0;
  app.add_option("--catalog", catalog_path, "catalog file (default: $KOLMOGOROV_CATALOG or the bundled one)");
  app.add_option("--seed", seed_text, "integer seed or 'random'");
  app.add_option("--format", format, "json (report on stdout) or text (summary on stdout)")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--allow-flagged", allow_flagged, "flagged items do not fail the run");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  SuiteOptions opts;
  int list = 0;

  auto* cat = app.add_subcommand("catalog", "list or show catalog entries");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "all entry ids");
  auto* cat_show = cat->add_subcommand("show", "one entry as JSON");
  std::string show_id;
  cat_show->add_option("id", show_id)->required();

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* v_sym = verify->add_subcommand("symmetry", "invariance and determining equations for every row");
  v_sym->add_option("--table", opts.table, "classification or canonical (default: both)")
      ->check(CLI::IsMember({"classification", "canonical"}));
  v_sym->add_option("--row", opts.row, "row id or number");
  v_sym->add_option("--budget", opts.budget, "parameter samples per row");
  auto* v_alg = verify->add_subcommand("algebra", "commutators and Jacobi identities");
  auto* v_sub = verify->add_subcommand("subalgebras", "closure of the listed subalgebras");
  v_sub->add_option("--list", list, "1 or 2 (dimension)")->check(CLI::IsMember({1, 2}));
  auto* v_eq = verify->add_subcommand("equivalence", "normalization recipes, mappings and symmetry transport");
  v_eq->add_option("--row", opts.row, "entry id");
  v_eq->add_option("--budget", opts.budget, "parameter samples per row");
  auto* v_probe = verify->add_subcommand("probe", "non-equivalence probes");
  auto* v_red = verify->add_subcommand("reductions", "symmetry reductions");
  v_red->add_option("--row", opts.row, "reduction id");
  auto* v_sol = verify->add_subcommand("solutions", "exact solutions");
  v_sol->add_option("--row", opts.row, "solution id");

  auto* solve = app.add_subcommand("solve", "finite-difference solve from a JSON config");
  std::string config_path, out_dir;
  solve->add_option("--config", config_path)->required();
  solve->add_option("--out", out_dir, "directory for CSV slices and manifest");

  auto* ch = app.add_subcommand("cole-hopf", "Cauchy problem for the reduced Burgers equation");
  ColeHopfRequest chr;
  ch->add_option("--g", chr.g, "initial profile, an expression in one variable")->required();
  ch->add_option("--t", chr.t)->required();
  auto* zopt = ch->add_option("--z", chr.z);
  auto* gopt = ch->add_option("--grid", chr.grid, "z0:z1:n");
  zopt->excludes(gopt);
  ch->add_option("--out", chr.out, "CSV output for --grid");
  ch->add_flag("--printed-sign", chr.printed_sign, "use exp(-1/2 int g) in the kernel");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
    if (ch->parsed() && !chr.z && chr.grid.empty()) throw CLI::RequiredError("--z or --grid");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report rep;
  rep.command = join(args);
  std::string started = iso_now();
  try {
    rep.seed = parse_seed(seed_text);
    opts.seed = rep.seed;
    opts.threads = threads;
    if (list) opts.list = list;

    std::optional<Catalog> catalog;
    auto need_catalog = [&]() -> const Catalog& {
      if (!catalog) catalog = load_catalog(catalog_path.empty() ? default_catalog_path() : catalog_path);
      rep.catalog_version = catalog->version;
      return *catalog;
    };

    if (cat->parsed()) {
      const Catalog& c = need_catalog();
      if (cat_list->parsed()) {
        for (auto& id : c.ids()) out << id << "\n";
      } else {
        auto s = c.show(show_id);
        if (!s) {
          err << "no catalog entry '" << show_id << "'\n";
          return 2;
        }
        out << *s << "\n";
      }
      return 0;
    }

    if (v_sym->parsed()) rep.merge(verify_symmetry(need_catalog(), opts));
    if (v_alg->parsed()) rep.merge(verify_algebra(need_catalog(), opts));
    if (v_sub->parsed()) rep.merge(verify_subalgebras(need_catalog(), opts));
    if (v_eq->parsed()) rep.merge(verify_equivalence(need_catalog(), opts));
    if (v_probe->parsed()) rep.merge(verify_probe(need_catalog(), opts));
    if (v_red->parsed()) rep.merge(verify_reductions(need_catalog(), opts));
    if (v_sol->parsed()) rep.merge(verify_solutions(need_catalog(), opts));
    if (solve->parsed()) {
      rep.merge(run_solve(&need_catalog(), config_path, out_dir));
    }
    if (ch->parsed()) rep.merge(run_cole_hopf(chr));
  } catch (const CatalogError& e) {
    err << "catalog error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return 1;
  }

  json j = rep.to_json();
  j["timestamps"] = {{"started", started}, {"finished", iso_now()}};
  std::string body = j.dump(2);
  if (format == "json") {
    out << body << "\n";
    err << rep.summary_text();
  } else {
    out << rep.summary_text();
    err << body << "\n";
  }
  bool failed = rep.count(Verdict::fail) > 0 || (!allow_flagged && rep.count(Verdict::flagged) > 0);
  return failed ? 1 : 0;
}

}  // namespace kolmo::cli
