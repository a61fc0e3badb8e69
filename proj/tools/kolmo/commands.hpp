#pragma once

#include "report.hpp"

#include "kolmo/catalog/catalog.hpp"

#include <optional>
#include <string>

namespace kolmo::cli {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// fd_solve from a JSON config file; slices and manifest go to out_dir when set.
[[nodiscard]] Report run_solve(const Catalog* catalog, const std::string& config_path, const std::string& out_dir);

struct ColeHopfRequest {
  std::string g;
  double t = 0.0;
  std::optional<double> z;
  std::string grid;  // "z0:z1:n"
  std::string out;
  bool printed_sign = false;
};

[[nodiscard]] Report run_cole_hopf(const ColeHopfRequest& request);

}  // namespace kolmo::cli
