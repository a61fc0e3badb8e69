#pragma once

#include <string>

namespace kolmo {

class Expr;

/// Text form accepted back by parse(); parse(render(e)) == e.
[[nodiscard]] std::string render(const Expr& e);

}  // namespace kolmo
