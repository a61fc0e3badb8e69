#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace kolmo::cli {

using json = nlohmann::ordered_json;

enum class Verdict { pass, fail, flagged };

[[nodiscard]] const char* verdict_name(Verdict v);

struct Item {
  std::string id;
  Verdict verdict = Verdict::pass;
  json details = json::object();
};

/// A printed formula that did not verify, with the readings that were tried.
struct CompatibilityNote {
  std::string id;
  std::string issue;
  json evidence = json::object();
};

struct Report {
  std::string command;
  std::string catalog_version;
  std::uint64_t seed = 0;
  std::vector<Item> items;
  std::vector<CompatibilityNote> notes;
  json extra = json::object();  // suite-level results (counts, tables)

  void add(Item item) { items.push_back(std::move(item)); }
  void note(std::string id, std::string issue, json evidence = json::object()) {
    notes.push_back({std::move(id), std::move(issue), std::move(evidence)});
  }
  void merge(Report other);

  [[nodiscard]] std::size_t count(Verdict v) const;
  /// Everything except timestamps, which callers add separately.
  [[nodiscard]] json to_json() const;
  [[nodiscard]] std::string summary_text() const;
};

/// Deterministic per-item seed.
[[nodiscard]] std::uint64_t item_seed(std::uint64_t seed, const std::string& id);

}  // namespace kolmo::cli
