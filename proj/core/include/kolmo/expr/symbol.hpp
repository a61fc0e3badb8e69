#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kolmo {

enum class SymbolKind : std::uint8_t {
  parameter,
  independent,    // t, x, y
  dependent,      // u
  jet,            // u_t, u_xx, ... (order <= 3)
  reduction,      // w1, w2
  reduction_jet,  // phi_w1, phi_w1w2, ... (order <= 2)
  basis,          // Dt, Dx, Dy, Du; only inside vector-field text
};

/// Raised for names that cannot denote a symbol (malformed jets, reserved words).
class SymbolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SymbolInfo {
  std::string name;  // canonical spelling
  SymbolKind kind;
};

inline constexpr int kMaxJetOrder = 3;
inline constexpr int kMaxPhiJetOrder = 2;

/// Classifies an identifier. Jet subscripts are normalized (u_xt -> u_tx).
[[nodiscard]] SymbolInfo resolve_symbol(std::string_view name, bool allow_basis = false);

[[nodiscard]] bool is_elementary_function(std::string_view name);
[[nodiscard]] bool is_opaque_function(std::string_view name);
[[nodiscard]] std::string_view kind_name(SymbolKind kind);

/// Multi-index (count of t, x, y) of a u-jet name.
[[nodiscard]] std::array<int, 3> jet_index(std::string_view jet);
[[nodiscard]] std::string jet_name(const std::array<int, 3>& index);
[[nodiscard]] int jet_order(std::string_view jet);

/// Multi-index (count of w1, w2) of a phi-jet name.
[[nodiscard]] std::array<int, 2> phi_jet_index(std::string_view jet);
[[nodiscard]] std::string phi_jet_name(const std::array<int, 2>& index);

}  // namespace kolmo
