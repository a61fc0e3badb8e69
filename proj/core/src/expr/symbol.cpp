#include "kolmo/expr/symbol.hpp"

#include <algorithm>
#include <cctype>

namespace kolmo {

namespace {

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

bool is_elementary_function(std::string_view name) {
  static constexpr std::string_view kNames[] = {"exp",  "ln",   "sin",  "cos", "tan",
                                                "sinh", "cosh", "sqrt", "abs"};
  return std::find(std::begin(kNames), std::end(kNames), name) != std::end(kNames);
}

bool is_opaque_function(std::string_view name) {
  return name == "f1" || name == "f2" || name == "g" || name == "phi";
}

std::string_view kind_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::parameter: return "parameter";
    case SymbolKind::independent: return "independent";
    case SymbolKind::dependent: return "dependent";
    case SymbolKind::jet: return "jet";
    case SymbolKind::reduction: return "reduction";
    case SymbolKind::reduction_jet: return "reduction_jet";
    case SymbolKind::basis: return "basis";
  }
  return "unknown";
}

std::array<int, 3> jet_index(std::string_view jet) {
  if (jet.size() < 3 || jet.substr(0, 2) != "u_")
    throw SymbolError("not a jet name: " + std::string(jet));
  std::array<int, 3> index{0, 0, 0};
  for (char c : jet.substr(2)) {
    switch (c) {
      case 't': ++index[0]; break;
      case 'x': ++index[1]; break;
      case 'y': ++index[2]; break;
      default: throw SymbolError("bad jet subscript in " + std::string(jet));
    }
  }
  return index;
}

std::string jet_name(const std::array<int, 3>& index) {
  std::string name = "u_";
  name.append(static_cast<std::size_t>(index[0]), 't');
  name.append(static_cast<std::size_t>(index[1]), 'x');
  name.append(static_cast<std::size_t>(index[2]), 'y');
  return name;
}

int jet_order(std::string_view jet) {
  auto idx = jet_index(jet);
  return idx[0] + idx[1] + idx[2];
}

std::array<int, 2> phi_jet_index(std::string_view jet) {
  if (jet.size() < 6 || jet.substr(0, 4) != "phi_")
    throw SymbolError("not a phi jet: " + std::string(jet));
  std::array<int, 2> index{0, 0};
  auto rest = jet.substr(4);
  if (rest.size() % 2 != 0) throw SymbolError("bad phi jet subscript in " + std::string(jet));
  for (std::size_t i = 0; i < rest.size(); i += 2) {
    if (rest[i] != 'w') throw SymbolError("bad phi jet subscript in " + std::string(jet));
    if (rest[i + 1] == '1') ++index[0];
    else if (rest[i + 1] == '2') ++index[1];
    else throw SymbolError("bad phi jet subscript in " + std::string(jet));
  }
  return index;
}

std::string phi_jet_name(const std::array<int, 2>& index) {
  if (index[0] == 0 && index[1] == 0) return "phi";
  std::string name = "phi_";
  for (int i = 0; i < index[0]; ++i) name += "w1";
  for (int i = 0; i < index[1]; ++i) name += "w2";
  return name;
}

SymbolInfo resolve_symbol(std::string_view name, bool allow_basis) {
  const std::string text(name);
  if (!is_identifier(name)) throw SymbolError("invalid identifier '" + text + "'");
  if (name == "t" || name == "x" || name == "y") return {text, SymbolKind::independent};
  if (name == "u") return {text, SymbolKind::dependent};
  if (name == "w1" || name == "w2") return {text, SymbolKind::reduction};
  if (name == "Dt" || name == "Dx" || name == "Dy" || name == "Du") {
    if (!allow_basis) throw SymbolError("basis marker '" + text + "' outside a vector field");
    return {text, SymbolKind::basis};
  }
  if (name == "phi") return {text, SymbolKind::reduction_jet};  // phi itself, as a jet of order 0
  if (is_elementary_function(name) || is_opaque_function(name))
    throw SymbolError("function name '" + text + "' used as a symbol");
  if (name.substr(0, 2) == "u_") {
    auto idx = jet_index(name);
    int order = idx[0] + idx[1] + idx[2];
    if (order > kMaxJetOrder)
      throw SymbolError("jet '" + text + "' exceeds order " + std::to_string(kMaxJetOrder));
    return {jet_name(idx), SymbolKind::jet};
  }
  if (name.substr(0, 4) == "phi_") {
    auto idx = phi_jet_index(name);
    if (idx[0] + idx[1] > kMaxPhiJetOrder)
      throw SymbolError("phi jet '" + text + "' exceeds order " + std::to_string(kMaxPhiJetOrder));
    return {phi_jet_name(idx), SymbolKind::reduction_jet};
  }
  if (name.find('_') != std::string_view::npos)
    throw SymbolError("unknown symbol '" + text + "'");
  return {text, SymbolKind::parameter};
}

}  // namespace kolmo
