#pragma once

#include "kolmo/expr/calculus.hpp"
#include "kolmo/symmetry/pde.hpp"
#include "kolmo/symmetry/vector_field.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

class CatalogError : public std::runtime_error {
 public:
  CatalogError(std::string id, std::string field, const std::string& message)
      : std::runtime_error((id.empty() ? std::string() : id + ": ") + (field.empty() ? std::string() : field + ": ") + message),
        id_(std::move(id)),
        field_(std::move(field)) {}
  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string id_, field_;
};

/// Either a reference to another catalog entry (ref) or an explicit equation.
struct PdeRef {
  std::string ref;
  std::string f1, f2;
  int y_sign = 1;
  std::vector<std::string> constraints;
};

struct GeneratorItem {
  std::string field;        // the encoded reading, a VectorField text
  std::string printed;      // as printed in the source table, when it differs
  std::string alternative;  // corrected reading tried when field fails
  std::string note;
};

/// Forward maps (t, x, y, u) -> barred variables, in source coordinates.
struct MapSpec {
  std::string t, x, y, u;
  [[nodiscard]] bool empty() const { return t.empty() && x.empty() && y.empty() && u.empty(); }
};

struct TargetRule {
  std::string when;  // constraint on the row's parameters; empty = always
  std::string row;   // id of a canonical entry
  std::map<std::string, std::string> bind;  // target parameter -> expression in row parameters
};

struct ClassificationEntry {
  std::string id;
  std::string section;  // f1_forms, f2_forms, classification, mappings, canonical
  std::string f1, f2;
  int y_sign = 1;
  std::vector<std::string> constraints;
  std::vector<std::string> free;  // parameters sampled from the default real range
  std::vector<GeneratorItem> generators;
  std::string notes, printed;

  // f1_forms / f2_forms: group-parameter recipe and normalized form.
  std::map<std::string, std::string> recipe;  // "a1".."a8" -> expression in k's
  std::map<std::string, std::string> bind;    // target parameter -> expression in k's
  std::string target_f1, target_f2;

  // mappings
  MapSpec transform, alternative, inverse;
  std::string alternative_note;
  std::vector<TargetRule> targets;

  [[nodiscard]] PdeInstance instance() const;
  [[nodiscard]] std::vector<std::string> parameters() const;
};

struct BasisElement {
  std::string name, field;
};

struct Relation {
  std::string left, right, result;  // [left, right] = result
};

struct AlgebraSpec {
  std::string id;
  PdeRef pde;
  std::vector<BasisElement> basis;
  std::vector<Relation> relations;
  std::string printed;
};

struct SubalgebraSpec {
  std::string id;
  std::string list;  // "one-dimensional" or "two-dimensional"
  std::vector<std::string> generators;  // combinations of basis names
  std::vector<std::string> constraints;
  std::map<std::string, std::vector<std::string>> samples;  // parameter -> exact values
  std::string printed;
};

struct SolutionAlternative {
  std::string u_expr, note;
};

struct ExactSolution {
  std::string id;
  PdeRef pde;
  std::string u_expr;
  std::vector<std::string> domain;
  std::vector<SolutionAlternative> alternatives;
  std::string reduction;  // id of the reduction it lifts from, if any
  std::string phi;        // the closed-form phi(w1) it lifts, if any
  std::string printed, notes;
};

struct ReductionVariant {
  std::vector<std::string> omegas;
  std::string ansatz, expected_reduced, note;
};

struct ReductionSpec {
  std::string id;
  PdeRef pde;
  std::vector<std::string> generators;  // combinations of basis names
  std::vector<std::string> omegas;      // w1, w2 in (t, x, y)
  std::string ansatz;                   // u in (t, x, y, phi(w1[, w2]))
  std::string expected_reduced;         // in phi-jets and w1, w2
  std::vector<std::string> constraints;
  std::vector<ReductionVariant> alternatives;
  std::vector<std::string> lifts;       // closed-form phi(w1) solutions of the reduced equation
  std::string printed, notes;
};

struct ProbeSpec {
  std::string id;
  PdeRef source, target;
  std::string claim;    // the printed constraint on a1, e.g. "a1^4 = -1"
  MapSpec transform;    // a known mapping, when the pair is equivalent
  std::string printed, notes;
};

struct Catalog {
  std::string schema_version;
  std::string version;
  std::vector<ClassificationEntry> f1_forms, f2_forms, classification, mappings, canonical;
  AlgebraSpec algebra;
  std::vector<SubalgebraSpec> subalgebras;
  std::vector<ExactSolution> solutions;
  std::vector<ReductionSpec> reductions;
  std::vector<ProbeSpec> probes;

  [[nodiscard]] const ClassificationEntry* find_entry(std::string_view id) const;
  [[nodiscard]] const ReductionSpec* find_reduction(std::string_view id) const;
  [[nodiscard]] PdeInstance resolve(const PdeRef& ref) const;
  /// Any entry, solution, reduction or probe by id, as a JSON string.
  [[nodiscard]] std::optional<std::string> show(std::string_view id) const;
  [[nodiscard]] std::vector<std::string> ids() const;
};

/// The basis as vector fields, in catalog order.
[[nodiscard]] std::vector<VectorField> basis_fields(const AlgebraSpec& algebra);

/// "X1 + alpha*X3" as a vector field; params bound before combining.
[[nodiscard]] VectorField algebra_element(const AlgebraSpec& algebra, std::string_view combination,
                                          const Bindings& params = {});

/// Parses and validates; throws CatalogError.
[[nodiscard]] Catalog parse_catalog(std::string_view json_text);
[[nodiscard]] Catalog load_catalog(const std::string& path);
[[nodiscard]] std::string serialize(const Catalog& catalog);

/// Path from $KOLMOGOROV_CATALOG, else the compiled-in default.
[[nodiscard]] std::string default_catalog_path();

/// Concrete instances of an entry: sign parameters enumerated exhaustively first,
/// exponent parameters from the exponent sample set, exclusions respected.
/// Parameters without a finite domain stay symbolic.
[[nodiscard]] std::vector<PdeInstance> expand_samples(const ClassificationEntry& entry, std::size_t budget,
                                                      std::uint64_t seed = 0x6b6f6c6d6fULL);

/// Same enumeration, as parameter bindings (name -> exact value text).
[[nodiscard]] std::vector<std::map<std::string, std::string>> sample_bindings(
    const std::vector<std::string>& constraints, const std::vector<std::string>& parameters, std::size_t budget,
    std::uint64_t seed = 0x6b6f6c6d6fULL);

}  // namespace kolmo
