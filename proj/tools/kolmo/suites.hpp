#pragma once

#include "report.hpp"

#include "kolmo/catalog/catalog.hpp"
#include "kolmo/expr/zero_test.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kolmo::cli {

struct SuiteOptions {
  std::uint64_t seed = 0x6b6f6c6d6fULL;
  std::size_t budget = 6;          // parameter samples per row
  std::string table;               // symmetry: "classification", "canonical" or empty for both
  std::string row;                 // a single entry id, or a 1-based row number
  std::optional<int> list;         // subalgebras: 1 or 2 dimensional
  unsigned threads = 0;            // 0 = hardware concurrency
};

[[nodiscard]] Report verify_symmetry(const Catalog& catalog, const SuiteOptions& options);
[[nodiscard]] Report verify_algebra(const Catalog& catalog, const SuiteOptions& options);
[[nodiscard]] Report verify_subalgebras(const Catalog& catalog, const SuiteOptions& options);
[[nodiscard]] Report verify_equivalence(const Catalog& catalog, const SuiteOptions& options);
[[nodiscard]] Report verify_probe(const Catalog& catalog, const SuiteOptions& options);
[[nodiscard]] Report verify_reductions(const Catalog& catalog, const SuiteOptions& options);
[[nodiscard]] Report verify_solutions(const Catalog& catalog, const SuiteOptions& options);

// shared helpers

/// Runs fn(0..n-1) on a small pool; results land by index so order is fixed.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

[[nodiscard]] ZeroTestConfig zero_config(std::uint64_t seed, const std::vector<Constraint>& constraints = {});
[[nodiscard]] json witness_json(const ZeroVerdict& v);
[[nodiscard]] Bindings to_bindings(const std::map<std::string, std::string>& values);
[[nodiscard]] std::string binding_label(const std::map<std::string, std::string>& values);
[[nodiscard]] std::vector<Constraint> parse_constraints(const std::vector<std::string>& texts);
/// Constraints whose symbols are untouched by the bindings.
[[nodiscard]] std::vector<Constraint> remaining(const std::vector<Constraint>& all,
                                                const std::map<std::string, std::string>& bound);

}  // namespace kolmo::cli
