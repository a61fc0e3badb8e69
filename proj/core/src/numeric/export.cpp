#include "kolmo/numeric/export.hpp"

#include "kolmo/expr/render.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace kolmo::numeric {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

}  // namespace

void write_slice_csv(const std::filesystem::path& path, const GridSolution& sol, std::size_t k) {
  auto out = open_out(path);
  out << "x,y,u\n";
  for (std::size_t i = 0; i < sol.xs.size(); ++i) {
    for (std::size_t j = 0; j < sol.ys.size(); ++j) {
      out << sol.xs[i] << ',' << sol.ys[j] << ',' << sol.at(k, i, j) << '\n';
    }
  }
}

std::vector<std::string> export_solution(const std::filesystem::path& dir, const SolverConfig& config,
                                         const GridSolution& sol, const std::map<std::string, double>& metrics) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  for (std::size_t k = 0; k < sol.values.size(); ++k) {
    std::string name = "slice_" + std::to_string(k) + ".csv";
    write_slice_csv(dir / name, sol, k);
    files.push_back(name);
  }
  nlohmann::ordered_json m;
  m["config"] = {{"f1", render(config.pde.f1)},
                 {"f2", render(config.pde.f2)},
                 {"y_sign", config.pde.y_sign},
                 {"t_end", config.t_end},
                 {"x", {config.x0, config.x1}},
                 {"y", {config.y0, config.y1}},
                 {"nx", config.nx},
                 {"ny", config.ny},
                 {"boundary", config.boundary == Boundary::dirichlet ? "dirichlet" : "periodic_y"},
                 {"initial", render(config.initial)},
                 {"boundary_values", render(config.boundary_values)},
                 {"params", config.params}};
  if (config.dt) {
    m["config"]["dt"] = *config.dt;
  } else {
    m["config"]["dt"] = "auto";
  }
  m["steps"] = sol.steps;
  nlohmann::ordered_json slices = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < files.size(); ++k) slices.push_back({{"t", sol.times[k]}, {"file", files[k]}});
  m["slices"] = slices;
  m["metrics"] = metrics;
  auto out = open_out(dir / "manifest.json");
  out << m.dump(2) << '\n';
  return files;
}

void write_profile_csv(const std::filesystem::path& path, const std::vector<double>& z, const std::vector<double>& phi) {
  if (z.size() != phi.size()) throw std::invalid_argument("write_profile_csv: size mismatch");
  auto out = open_out(path);
  out << "z,phi\n";
  for (std::size_t k = 0; k < z.size(); ++k) out << z[k] << ',' << phi[k] << '\n';
}

}  // namespace kolmo::numeric
