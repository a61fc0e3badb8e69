#include "kolmo/catalog/catalog.hpp"
#include "kolmo/expr/constraint.hpp"
#include "kolmo/expr/parse.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

using namespace kolmo;
using nlohmann::ordered_json;

namespace {

std::string shipped_text() {
  std::ifstream in(default_catalog_path());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json shipped() { return ordered_json::parse(shipped_text()); }

std::string error_of(const ordered_json& j) {
  try {
    (void)parse_catalog(j.dump());
  } catch (const CatalogError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Catalog, ShippedCounts) {
  auto c = load_catalog(default_catalog_path());
  EXPECT_EQ(c.f1_forms.size(), 3u);
  EXPECT_EQ(c.f2_forms.size(), 13u);
  EXPECT_EQ(c.classification.size(), 22u);
  EXPECT_EQ(c.mappings.size(), 6u);
  EXPECT_EQ(c.canonical.size(), 14u);
  EXPECT_EQ(c.algebra.basis.size(), 6u);
  EXPECT_EQ(c.subalgebras.size(), 42u);
  EXPECT_EQ(c.reductions.size(), 6u);
  EXPECT_EQ(c.solutions.size(), 7u);
  EXPECT_EQ(c.probes.size(), 2u);
}

TEST(Catalog, EveryExpressionParses) {
  auto c = load_catalog(default_catalog_path());
  for (const auto* table : {&c.classification, &c.canonical}) {
    for (const auto& e : *table) {
      EXPECT_NO_THROW((void)e.instance()) << e.id;
      for (const auto& g : e.generators) EXPECT_NO_THROW((void)VectorField::parse(g.field)) << e.id;
    }
  }
  for (const auto& s : c.solutions) EXPECT_NO_THROW((void)parse(s.u_expr)) << s.id;
}

TEST(Catalog, RoundTrip) {
  auto c = load_catalog(default_catalog_path());
  auto text = serialize(c);
  auto again = parse_catalog(text);
  EXPECT_EQ(serialize(again), text);
  EXPECT_EQ(again.ids(), c.ids());
}

TEST(Catalog, Lookup) {
  auto c = load_catalog(default_catalog_path());
  ASSERT_NE(c.find_entry("C.2"), nullptr);
  EXPECT_EQ(c.find_entry("C.2")->section, "classification");
  EXPECT_EQ(c.find_entry("C.99"), nullptr);
  ASSERT_TRUE(c.show("R.burgers").has_value());
  EXPECT_NE(c.show("R.burgers")->find("omegas"), std::string::npos);
  EXPECT_FALSE(c.show("nope").has_value());
  auto pde = c.resolve(c.algebra.pde);
  EXPECT_EQ(pde.f1, parse("u"));
  EXPECT_EQ(pde.y_sign, -1);
}

TEST(CatalogErrors, EmptyAndMalformed) {
  EXPECT_THROW((void)parse_catalog(""), CatalogError);
  EXPECT_THROW((void)parse_catalog("{}"), CatalogError);
  EXPECT_THROW((void)parse_catalog("[1, 2]"), CatalogError);
  EXPECT_THROW((void)load_catalog("/nonexistent/catalog.json"), CatalogError);
}

TEST(CatalogErrors, UndeclaredParameter) {
  auto j = shipped();
  j["tables"]["classification"][1]["f2"] = "eps1*exp(m*u) + q";
  auto msg = error_of(j);
  EXPECT_NE(msg.find("C.2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("q"), std::string::npos) << msg;
}

TEST(CatalogErrors, DuplicateId) {
  auto j = shipped();
  j["tables"]["classification"][2]["id"] = "C.1";
  EXPECT_NE(error_of(j).find("duplicate"), std::string::npos);
}

TEST(CatalogErrors, StructuralChecks) {
  {
    auto j = shipped();
    j["schema_version"] = "0";
    EXPECT_NE(error_of(j).find("schema_version"), std::string::npos);
  }
  {
    auto j = shipped();
    j["tables"]["canonical"].erase(0);
    EXPECT_NE(error_of(j).find("rows"), std::string::npos);
  }
  {
    auto j = shipped();
    j["tables"]["classification"][0]["f1"] = "f1(u) +";
    EXPECT_NE(error_of(j).find("C.1"), std::string::npos);
  }
  {
    auto j = shipped();
    j["tables"]["mappings"][0]["targets"][0]["row"] = "K.99";
    EXPECT_NE(error_of(j).find("K.99"), std::string::npos);
  }
  {
    auto j = shipped();
    j["tables"]["classification"][0]["y_sign"] = 2;
    EXPECT_NE(error_of(j).find("y_sign"), std::string::npos);
  }
}

TEST(Samples, ExponentExclusions) {
  auto c = load_catalog(default_catalog_path());
  const auto* e = c.find_entry("C.2");
  ASSERT_NE(e, nullptr);
  auto rows = sample_bindings(e->constraints, e->parameters(), 12);
  ASSERT_FALSE(rows.empty());
  std::set<std::string> signs;
  for (const auto& r : rows) {
    ASSERT_TRUE(r.count("m"));
    EXPECT_NE(r.at("m"), "0");
    EXPECT_NE(r.at("m"), "1");
    signs.insert(r.at("eps1"));
  }
  EXPECT_EQ(signs, (std::set<std::string>{"-1", "1"}));
  auto inst = expand_samples(*e, 12);
  EXPECT_EQ(inst.size(), rows.size());
  for (const auto& p : inst) EXPECT_TRUE(free_symbols(p.f2).count("m") == 0);
}

TEST(Samples, RelationConstraints) {
  auto c = load_catalog(default_catalog_path());
  const auto* e = c.find_entry("K.8");
  ASSERT_NE(e, nullptr);
  for (const auto& r : sample_bindings(e->constraints, e->parameters(), 16)) {
    std::map<std::string, Rational> pt;
    for (const auto& [k, v] : r) pt[k] = parse(v).value();
    for (const auto& text : e->constraints) {
      auto ok = parse_constraint(text).holds_exact(pt);
      ASSERT_TRUE(ok.has_value()) << text;
      EXPECT_TRUE(*ok) << text;
    }
  }
}

TEST(Samples, NoParametersGivesOneInstance) {
  auto c = load_catalog(default_catalog_path());
  EXPECT_EQ(expand_samples(*c.find_entry("C.1"), 8).size(), 1u);
  EXPECT_EQ(expand_samples(*c.find_entry("K.14"), 8).size(), 1u);
}

TEST(Samples, Deterministic) {
  auto c = load_catalog(default_catalog_path());
  const auto* e = c.find_entry("K.8");
  EXPECT_EQ(sample_bindings(e->constraints, e->parameters(), 6, 42),
            sample_bindings(e->constraints, e->parameters(), 6, 42));
}
