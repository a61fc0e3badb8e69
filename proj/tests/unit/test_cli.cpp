#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run kolmo_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = kolmo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const Run& r) {
  auto j = json::parse(r.out);
  j.erase("timestamps");
  return j;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("kolmo_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(kolmo_run({"frobnicate"}).code, 2);
  EXPECT_EQ(kolmo_run({"verify", "symmetry", "--table", "4"}).code, 2);
  EXPECT_EQ(kolmo_run({"cole-hopf", "--g", "0", "--t", "1"}).code, 2);
  EXPECT_EQ(kolmo_run({"--seed", "banana", "verify", "algebra"}).code, 2);
  EXPECT_EQ(kolmo_run({"--catalog", "/nonexistent.json", "verify", "algebra"}).code, 2);
  EXPECT_EQ(kolmo_run({"--help"}).code, 0);
}

TEST(Cli, CatalogListAndShow) {
  auto list = kolmo_run({"catalog", "list"});
  ASSERT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("C.22\n"), std::string::npos);
  EXPECT_NE(list.out.find("R.burgers\n"), std::string::npos);

  auto show = kolmo_run({"catalog", "show", "K.14"});
  ASSERT_EQ(show.code, 0);
  EXPECT_EQ(json::parse(show.out)["id"], "K.14");
  EXPECT_EQ(kolmo_run({"catalog", "show", "K.15"}).code, 2);
}

TEST(Cli, AlgebraReport) {
  auto r = kolmo_run({"verify", "algebra"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto j = report(r);
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_EQ(j["results"]["algebra"]["jacobi_vanishing"], 20);
  EXPECT_EQ(j["results"]["algebra"]["commuting_pairs"], 9);
}

TEST(Cli, FlaggedRowsNeedOptIn) {
  auto strict = kolmo_run({"verify", "symmetry", "--table", "classification", "--row", "9"});
  EXPECT_EQ(strict.code, 1);
  auto j = report(strict);
  ASSERT_EQ(j["items"].size(), 1u);
  EXPECT_EQ(j["items"][0]["verdict"], "flagged");
  EXPECT_FALSE(j["compatibility_notes"].empty());
  EXPECT_EQ(kolmo_run({"--allow-flagged", "verify", "symmetry", "--table", "classification", "--row", "9"}).code, 0);
}

TEST(Cli, DeterministicAcrossRunsAndThreads) {
  auto a = kolmo_run({"verify", "symmetry", "--table", "canonical", "--seed", "7"});
  auto b = kolmo_run({"verify", "symmetry", "--table", "canonical", "--seed", "7"});
  EXPECT_EQ(report(a).dump(), report(b).dump());
  auto c = report(kolmo_run({"--threads", "1", "verify", "symmetry", "--table", "canonical", "--seed", "7"}));
  auto ref = report(a);
  c.erase("command");
  ref.erase("command");
  EXPECT_EQ(c.dump(), ref.dump());
  EXPECT_EQ(report(a)["seed"], 7);
}

TEST(Cli, TextFormatSwapsStreams) {
  auto r = kolmo_run({"--format", "text", "verify", "algebra"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pass"), std::string::npos);
  EXPECT_TRUE(json::accept(r.err));
}

TEST(Cli, SolveFromConfig) {
  auto dir = scratch("solve");
  {
    std::ofstream cfg(dir / "front.json");
    cfg << R"cfg({"pde": {"ref": "A6"}, "t_end": 0.25, "x": [0, 1], "y": [0, 1], "nx": 16, "ny": 16,
               "dt": "auto", "initial": "x + y", "boundary": "dirichlet",
               "boundary_values": "(x + y)/(1 - t)", "exact": "(x + y)/(1 - t)", "snapshots": 3,
               "tolerance": 0.01})cfg";
  }
  auto r = kolmo_run({"solve", "--config", (dir / "front.json").string(), "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "slice_2.csv"));

  {
    std::ofstream cfg(dir / "bad.json");
    cfg << R"({"pde": {"ref": "A6"}, "nx": "many"})";
  }
  EXPECT_EQ(kolmo_run({"solve", "--config", (dir / "bad.json").string()}).code, 2);
  fs::remove_all(dir);
}

TEST(Cli, ColeHopfGrid) {
  auto dir = scratch("ch");
  auto csv = dir / "profile.csv";
  auto r = kolmo_run({"cole-hopf", "--g", "1 + sinh(z/2)/cosh(z/2)", "--t", "0.5", "--grid", "-2:2:5", "--out",
                      csv.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "z,phi");
  int rows = 0;
  while (std::getline(in, line)) {
    auto comma = line.find(',');
    double z = std::stod(line.substr(0, comma)), phi = std::stod(line.substr(comma + 1));
    EXPECT_NEAR(phi, 1 + std::tanh((z + 0.5) / 2), 1e-4);
    ++rows;
  }
  EXPECT_EQ(rows, 5);
  fs::remove_all(dir);
}
